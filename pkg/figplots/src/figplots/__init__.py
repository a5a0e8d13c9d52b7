"""Figure rendering for netdrift sweep outputs."""

__version__ = "0.1.0"

from .render import (
    EmptyDataError,
    FigureSpec,
    KINDS,
    SchemaError,
    build_figure,
    load_curves,
    render,
    render_directory,
)
