"""Publication-style figures from flowlimits CSV curve files.

A thin rendering layer: it parses the producer's CSV format and overlays
truth curves with their bound curves (crossover markers included) into PNG
or SVG. No physics is recomputed here; every plotted series is a column of
the input file.
"""

from .figures import FIGURE_IDS, FigureJob, RenderResult, render
from .io import CurveFile, CurveFileError, read_curve_file

__version__ = "0.1.0"
