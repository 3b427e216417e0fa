"""JSON, CSV and SVG encodings used by the command line."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

from .laurent import Laurent, format_fraction
from .samples import PhiSamples, SamplesFormatError, parse_rational
from .scheme import MaskResult, bare_mask
from .engine import CascadeGrid, ControlData


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, Laurent):
        return laurent_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def laurent_to_json(p: Laurent) -> list:
    return [[k, format_fraction(v)] for k, v in p.items()]


def laurent_from_json(obj) -> Laurent:
    """Accepts ``[[exp, value], ...]`` or ``[{"exp": .., "value": ..}, ...]``."""
    if not isinstance(obj, list):
        raise SamplesFormatError("a Laurent polynomial must be a list of [exp, value] pairs")
    coeffs = {}
    for entry in obj:
        if isinstance(entry, dict):
            k, v = entry.get("exp"), entry.get("value")
        elif isinstance(entry, list) and len(entry) == 2:
            k, v = entry
        else:
            raise SamplesFormatError(f"bad Laurent term {entry!r}")
        if isinstance(k, bool) or not isinstance(k, int):
            raise SamplesFormatError(f"exponent must be an integer, got {k!r}")
        if k in coeffs:
            raise SamplesFormatError(f"duplicate exponent {k}")
        coeffs[k] = parse_rational(v)
    return Laurent(coeffs)


def mask_to_json(mask: MaskResult) -> dict:
    return {
        "arity": mask.m,
        "d": mask.d,
        "parity": mask.parity,
        "sigma": format_fraction(mask.sigma),
        "coefficients": [
            {"exp": k, "value": format_fraction(mask.symbol[k])}
            for k in range(mask.symbol.low, mask.symbol.high + 1)
        ],
        "provenance": _jsonable(mask.provenance),
    }


def mask_from_json(obj: dict, samples: PhiSamples | None = None) -> MaskResult:
    try:
        m = obj["arity"]
        coeffs = obj["coefficients"]
    except (KeyError, TypeError):
        raise SamplesFormatError('mask file needs "arity" and "coefficients"') from None
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise SamplesFormatError(f"bad arity {m!r}")
    return bare_mask(laurent_from_json(coeffs), m, int(obj.get("d", 0)), samples,
                     obj.get("provenance"))


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def load_mask(path, samples: PhiSamples | None = None) -> MaskResult:
    return mask_from_json(_read_json(path), samples)


def load_homotopy(path):
    """``(homotopy, particular)`` from an override file.

    The file is either a bare Laurent polynomial, taken as ``H_{0,1}``, or an
    object ``{"H": {"i,j": poly}, "particular": [poly, ...]}``.
    """
    obj = _read_json(path)
    if isinstance(obj, list):
        return {(0, 1): laurent_from_json(obj)}, None
    if not isinstance(obj, dict):
        raise SamplesFormatError("homotopy file must be a list or an object")
    hom = {}
    for key, poly in obj.get("H", {}).items():
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError:
            raise SamplesFormatError(f'homotopy key must look like "i,j", got {key!r}') from None
        hom[(i, j)] = laurent_from_json(poly)
    part = obj.get("particular")
    if part is not None:
        part = [laurent_from_json(p) for p in part]
    return hom, part


def load_polygon(path) -> tuple[ControlData, bool]:
    """``{"points": [[x, y], ...], "closed": bool}`` with exact coordinates."""
    obj = _read_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("points"), list) or not obj["points"]:
        raise SamplesFormatError('polygon file needs a nonempty "points" list')
    pts = []
    for p in obj["points"]:
        if not isinstance(p, list):
            raise SamplesFormatError(f"bad point {p!r}")
        pts.append(tuple(parse_rational(v) for v in p))
    if len({len(p) for p in pts}) != 1:
        raise SamplesFormatError("dimension mismatch between polygon points")
    closed = bool(obj.get("closed", False))
    return ControlData(tuple(pts), 0, "periodic" if closed else "window"), closed


def _num(v, exact: bool) -> str:
    if exact:
        return format_fraction(Fraction(v))
    return repr(float(v))


def grid_to_csv(grid: CascadeGrid, stride: int = 1) -> str:
    """Rows ``t, x, value``: dual node, centered abscissa and cascade value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "value"])
    for n in range(0, len(grid), stride):
        i = grid.offset + n
        w.writerow([_num(grid.t(i), grid.exact), _num(grid.x(i), grid.exact),
                    _num(grid.values[n], grid.exact)])
    return buf.getvalue()


def points_to_csv(data: ControlData, exact: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index"] + [f"x{c}" for c in range(data.dim)])
    for i, p in zip(data.indices, data.points):
        w.writerow([i] + [_num(v, exact) for v in p])
    return buf.getvalue()


def render_svg(polygon: ControlData, refined: ControlData, closed: bool, size: int = 480) -> str:
    """Dotted control polygon plus the refined curve as two ``path`` elements."""
    if polygon.dim != 2 or refined.dim != 2:
        raise ValueError("rendering needs planar points")
    ctrl = [(float(x), float(y)) for x, y in polygon.points]
    curve = [(float(x), float(y)) for x, y in refined.points]
    xs = [p[0] for p in ctrl + curve]
    ys = [p[1] for p in ctrl + curve]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    margin = 0.08 * span
    scale = size / (span + 2 * margin)

    def tr(p):
        return ((p[0] - min(xs) + margin) * scale, (max(ys) - p[1] + margin) * scale)

    def path(points, close):
        cmds = [f"{'M' if n == 0 else 'L'}{x:.4f},{y:.4f}" for n, (x, y) in enumerate(map(tr, points))]
        return " ".join(cmds) + (" Z" if close else "")

    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'  <path d="{path(ctrl, closed)}" fill="none" stroke="black" stroke-width="1" '
        f'stroke-dasharray="2,3"/>\n'
        f'  <path d="{path(curve, closed)}" fill="none" stroke="black" stroke-width="1.5"/>\n'
        "</svg>\n"
    )


def data_path(name: str):
    """Bundled input files (sample sets, homotopy overrides, polygons)."""
    return resources.files("dualsubdiv") / "data" / name
