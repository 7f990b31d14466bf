"""
Plain-text serialization: wavefunctions as CSV, spectra as JSON plus CSV.

CSV numbers are written in scientific notation with a fixed number of
significant digits so output is byte-stable across runs.
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import ShapeError
from .grid import Grid1D, WaveFunction


def fmt(value, precision=10):
    """``%.{precision-1}e`` formatting; precision counts significant digits."""
    return f"{float(value):.{max(precision, 1) - 1}e}"


def write_rows(header, rows, precision=10, stream=None):
    """CSV text for ``rows`` of numbers (strings are passed through)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v, precision) for v in row])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def wavefunction_to_csv(psi, precision=17):
    return write_rows(("x", "re", "im"), zip(psi.grid.x, psi.values.real, psi.values.imag), precision)


def wavefunction_from_csv(source):
    """Read ``x,re,im`` CSV (path or text); the x column must be uniformly spaced."""
    text = Path(source).read_text() if _is_path(source) else source
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["x", "re", "im"]:
        raise ShapeError("wavefunction CSV must start with the header x,re,im")
    data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    if data.ndim != 2 or data.shape[1] != 3 or len(data) < 3:
        raise ShapeError("wavefunction CSV needs at least 3 rows of x,re,im")
    x = data[:, 0]
    grid = Grid1D(float(x[0]), float(x[-1]), len(x))
    if not np.allclose(x, grid.x, rtol=0, atol=1e-9 * (grid.x_max - grid.x_min)):
        raise ShapeError("x column is not a uniform grid")
    return WaveFunction(grid, data[:, 1] + 1j * data[:, 2])


def _is_path(source):
    return isinstance(source, Path) or ("\n" not in str(source) and Path(str(source)).exists())


def grid_to_dict(grid):
    return {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points}


def spectrum_to_json(spectrum):
    return json.dumps({
        "energies": [float(e) for e in spectrum.energies],
        "grid": grid_to_dict(spectrum.grid),
        "mass": spectrum.mass,
        "hbar": spectrum.hbar,
    }, indent=2)


def save_spectrum(spectrum, directory, precision=17):
    """Write spectrum.json and state_<n>.csv files; returns the written paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = [d / "spectrum.json"]
    paths[0].write_text(spectrum_to_json(spectrum) + "\n")
    for n, psi in enumerate(spectrum.states):
        p = d / f"state_{n}.csv"
        p.write_text(wavefunction_to_csv(psi, precision))
        paths.append(p)
    return paths


def load_spectrum_json(path):
    data = json.loads(Path(path).read_text())
    g = data["grid"]
    return np.array(data["energies"]), Grid1D(g["x_min"], g["x_max"], g["n_points"])


def to_jsonable(obj):
    """Recursively convert numpy and complex values for json.dumps."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj
