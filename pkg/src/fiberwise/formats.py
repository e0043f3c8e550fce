"""Reading and writing polygons, weights and results.

Rationals are always written as ``"p/q"`` strings (or ``"n"`` for integers),
never as floats, so every file re-parses to the exact in-memory values.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .capacities import CapacityVerdict, TransferReport, ViterboReport
from .distances import DistanceValue
from .ech import CapacitySequence, EmbeddingCertificate, WeightSequence
from .geometry import StarPolygon, make_star_polygon, normal_features
from .reeb import Spectrum
from .surd import Sqrt


class ParseError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


def rat(x) -> str:
    return str(Fraction(x))


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, an integer string or a JSON integer."""
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"expected an exact rational, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except ValueError:
            raise ParseError(f"bad rational {s!r}") from None
    raise ParseError(f"expected a rational, got {type(s).__name__}")


def encode_scalar(x):
    """JSON form of an exact value: ``"p/q"``, ``{"squared": "p/q"}`` or ``"inf"``."""
    if x == math.inf:
        return "inf"
    if isinstance(x, Sqrt):
        r = x.exact()
        return rat(r) if isinstance(r, Fraction) else {"squared": rat(x.squared)}
    return rat(x)


def decode_scalar(v):
    if v == "inf":
        return math.inf
    if isinstance(v, dict) and "squared" in v:
        return Sqrt(parse_rational(v["squared"])).exact()
    return parse_rational(v)


def load_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def polygon_from_json(data) -> StarPolygon:
    """Build a StarPolygon from ``{"vertices": [["p/q", "p/q"], ...]}``."""
    pts = _points(data, "vertices")
    return make_star_polygon(pts)


def _points(data, key):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"expected an object with a {key!r} list")
    raw = data[key]
    if not isinstance(raw, list):
        raise ParseError(f"{key!r} must be a list")
    pts = []
    for i, p in enumerate(raw):
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError(f"{key}[{i}] must be a pair")
        pts.append((parse_rational(p[0]), parse_rational(p[1])))
    return pts


def polygon_to_json(P) -> dict:
    return {"vertices": [[rat(x), rat(y)] for x, y in P.vertices]}


def weights_from_json(data) -> WeightSequence:
    """``{"head": "3", "weights": ["1", ...]}``."""
    if not isinstance(data, dict) or "head" not in data:
        raise ParseError("expected an object with 'head' and 'weights'")
    return WeightSequence(
        parse_rational(data["head"]), tuple(parse_rational(w) for w in data.get("weights", []))
    )


def weights_to_json(W: WeightSequence) -> dict:
    return {"head": rat(W.head), "weights": [rat(w) for w in W.weights]}


# --------------------------------------------------------------------------
# result encoders


def spectrum_csv(S: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["action", "kind", "feature_index", "direction_m", "direction_n", "cover"])
    for action, classes in S.actions:
        for c in classes:
            w.writerow([rat(action), c.kind, c.feature_index, c.direction.m, c.direction.n, c.cover])
    return buf.getvalue()


def spectrum_from_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    for r in rows:
        r["action"] = parse_rational(r["action"])
        for k in ("feature_index", "direction_m", "direction_n", "cover"):
            r[k] = int(r[k])
    return rows


def capacity_csv(seq: CapacitySequence) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "value_num", "value_den", "source"])
    for k in sorted(seq.values):
        v = Fraction(seq.values[k])
        w.writerow([k, v.numerator, v.denominator, seq.source])
    return buf.getvalue()


def capacity_from_csv(text: str) -> CapacitySequence:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ParseError("empty capacity table")
    vals = {int(r["k"]): Fraction(int(r["value_num"]), int(r["value_den"])) for r in rows}
    return CapacitySequence(vals, rows[0]["source"])


def certificate_to_json(c: EmbeddingCertificate, runtime: float | None = None) -> dict:
    out = {
        "target": weights_to_json(c.target),
        "a": rat(c.ball),
        "K": c.explicit_k_max,
        "tail_bound_k": c.tail_bound_k,
        "tail_rule": c.tail_rule,
        "checked_all": all(c.checked),
        "verdict": c.verdict,
    }
    if c.witness_k is not None:
        out["witness_k"] = c.witness_k
        out["witness_union"] = rat(c.witness_lhs)
        out["witness_ball"] = rat(c.witness_rhs)
    if runtime is not None:
        out["runtime"] = runtime
    return out


def verdict_to_json(v: CapacityVerdict) -> dict:
    if v.value is None:
        value = {"interval": [encode_scalar(v.lo), encode_scalar(v.hi)]}
    else:
        value = encode_scalar(v.value)
    return {"value": value, "rule": v.rule, "sys": rat(v.sys), "rho": rat(v.rho)}


def verdict_value_from_json(d):
    v = d["value"]
    if isinstance(v, dict) and "interval" in v:
        return tuple(decode_scalar(x) for x in v["interval"])
    return decode_scalar(v)


def distance_to_json(d: DistanceValue) -> dict:
    C = rat(d.C) if d.exact else str(d.C)
    return {"C": C, "log": float(d.log_value), "exact": d.exact, "mode": d.mode}


def transfer_to_json(r: TransferReport) -> dict:
    return {
        "monotone": r.monotone,
        "lo": rat(r.lo),
        "hi": rat(r.hi),
        "value": None if r.value is None else rat(r.value),
        "gromov_width": None if r.gromov_width is None else encode_scalar(r.gromov_width),
    }


def probe_to_json(r: ViterboReport) -> dict:
    return {
        "gromov_width": encode_scalar(r.gromov_width),
        "two_sys": rat(r.two_sys),
        "gap": r.gap,
        "message": r.message,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# SVG


def polygon_svg(P: StarPolygon, size: int = 512) -> str:
    """The polygon scaled into a ``size`` square, with an outward arrow for
    every edge normal and a legend of the directions."""
    xs = [float(x) for x, _ in P.vertices]
    ys = [float(y) for _, y in P.vertices]
    span = max(max(map(abs, xs)), max(map(abs, ys))) or 1.0
    margin = 0.2 * size
    scale = (size / 2 - margin) / span

    def tx(x, y):
        return size / 2 + scale * x, size / 2 - scale * y

    pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in (tx(x, y) for x, y in zip(xs, ys)))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>',
        f'<polygon points="{pts}" fill="#dde8f5" stroke="#234" stroke-width="1.5"/>',
        f'<circle cx="{size / 2}" cy="{size / 2}" r="2" fill="#234"/>',
    ]
    legend = []
    for f in normal_features(P):
        if f.kind != "edge":
            continue
        mx = (float(f.start[0]) + float(f.end[0])) / 2
        my = (float(f.start[1]) + float(f.end[1])) / 2
        m, n = f.direction.vec
        norm = math.hypot(m, n)
        x0, y0 = tx(mx, my)
        x1, y1 = x0 + 30 * m / norm, y0 - 30 * n / norm
        lines.append(
            f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
            'stroke="#b22" stroke-width="1.5" marker-end="url(#arrow)"/>'
        )
        legend.append(f"({m},{n})")
    lines.append(
        f'<text x="8" y="{size - 8}" font-size="12" font-family="monospace">'
        f"edge normals: {' '.join(legend)}</text>"
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
