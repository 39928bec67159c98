"""Publication-style figures from bunching scan CSV files."""

from .render import FIGURES, FigureSpec, MissingColumn, clean_series, load_table, render

__version__ = "0.1.0"

__all__ = ["FIGURES", "FigureSpec", "MissingColumn", "clean_series", "load_table", "render"]
