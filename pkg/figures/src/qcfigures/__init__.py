"""Static figure rendering for qchaos experiment CSV outputs."""

from .render import SCHEMAS, FigureSpec, load_rows, render

__all__ = ["SCHEMAS", "FigureSpec", "load_rows", "render"]
__version__ = "0.1.0"
