"""Command-line front end.

Every command reads JSON inputs (see :mod:`fiberwise.formats`) and writes
JSON, CSV or SVG to ``--output`` or stdout.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 search budget
exhausted, 5 obstruction found by ``embed --expect-embed``.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import formats as fmt
from .capacities import normalized_capacity, toric_transfer, viterbo_probe
from .distances import hbm_distance, inclusion_distance
from .ech import (
    CapacitySequence,
    NonTerminating,
    TailBoundFails,
    ball_capacity,
    embed_ball_check,
    flat_capacity,
    gen_toric_capacity,
    gromov_width_witness,
    union_capacities,
    weight_decomposition,
)
from .geometry import GeometryError, as_convex, is_centrally_symmetric
from .reeb import (
    classify,
    hull_sys_bound,
    orbit_classes,
    ruelle_invariant,
    spectrum,
    sys_ratio,
    systole_witness,
    volume,
    zeta,
)

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_OBSTRUCTED = 0, 2, 3, 4, 5

FORMATS = {
    "analyze": ("json", "svg"),
    "spectrum": ("csv", "json", "svg"),
    "ech": ("csv", "json"),
    "width": ("json",),
    "embed": ("json",),
    "distance": ("json",),
    "classify": ("json",),
    "probe": ("json",),
    "transfer": ("json",),
}


def _read(path):
    if path == "-":
        return fmt.load_json_text(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return fmt.load_json_text(fh.read())


def _polygon(data):
    return fmt.polygon_from_json(data)


def _weights(data):
    """Weights directly, or decomposed from a ``{"region": [...]}`` polygon."""
    if isinstance(data, dict) and "region" in data:
        return weight_decomposition(fmt._points(data, "region"))
    return fmt.weights_from_json(data)


def cmd_analyze(args, inputs):
    P = _polygon(inputs[0])
    if args.format == "svg":
        return fmt.polygon_svg(P)
    flags = classify(P)
    s, w, v = systole_witness(P)
    hull_sys, hull_bound = hull_sys_bound(P)
    report = {
        "polygon": fmt.polygon_to_json(P),
        "sys": fmt.rat(s),
        "sys_direction": [w.m, w.n],
        "sys_vertex": [fmt.rat(v[0]), fmt.rat(v[1])],
        "volume": fmt.rat(volume(P)),
        "rho": fmt.rat(sys_ratio(P)),
        "hull_sys": fmt.rat(hull_sys),
        "hull_rho_bound": fmt.rat(hull_bound),
        "ruelle": fmt.rat(ruelle_invariant(P)),
        "zeta": zeta(P).render(),
        "is_product": flags.is_product,
        "fiber_convex": flags.fiber_convex,
        "fiber_centrally_symmetric": flags.fiber_centrally_symmetric,
        "generalized_monotone": flags.generalized_monotone,
        "dynamically_convex": flags.dynamically_convex,
        "systolically_convex": flags.systolically_convex,
    }
    return fmt.dumps(report)


def cmd_spectrum(args, inputs):
    P = _polygon(inputs[0])
    if args.format == "svg":
        return fmt.polygon_svg(P)
    cutoff = fmt.parse_rational(args.cutoff) if args.cutoff else 2 * systole_witness(P)[0]
    S = spectrum(P, cutoff)
    if args.format == "csv":
        return fmt.spectrum_csv(S)
    rows = [
        {
            "action": fmt.rat(c.action),
            "kind": c.kind,
            "feature_index": c.feature_index,
            "direction": [c.direction.m, c.direction.n],
            "cover": c.cover,
        }
        for c in orbit_classes(P, cutoff, covers=True)
    ]
    return fmt.dumps({"cutoff": fmt.rat(cutoff), "orbits": rows})


def _ech_row(job):
    kind, payload, k = job
    if kind == "flat":
        return flat_capacity(payload, k)
    return gen_toric_capacity(payload, k)


def cmd_ech(args, inputs):
    data = inputs[0]
    kmax = args.kmax
    if kmax < 1:
        raise ValueError("--kmax must be at least 1")
    ks = list(range(1, kmax + 1))
    if isinstance(data, dict) and "ball" in data:
        a = fmt.parse_rational(data["ball"])
        values, source = [ball_capacity(a, k) for k in ks], "ball"
    elif isinstance(data, dict) and "balls" in data:
        table = union_capacities([fmt.parse_rational(x) for x in data["balls"]], kmax)
        values, source = table[1:], "union"
    else:
        if isinstance(data, dict) and "vertices" in data:
            A = _polygon(data)
            if not is_centrally_symmetric(A):
                raise GeometryError("flat capacities need a centrally symmetric fiber")
            job, source = ("flat", as_convex(A)), "flat"
        else:
            job, source = ("gen_toric", _weights(data)), "gen_toric"
        jobs = [(job[0], job[1], k) for k in ks]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                values = list(ex.map(_ech_row, jobs))
        else:
            values = [_ech_row(j) for j in jobs]
    seq = CapacitySequence(dict(zip(ks, values)), source)
    if args.format == "csv":
        return fmt.capacity_csv(seq)
    return fmt.dumps({"source": source, "values": {str(k): fmt.rat(v) for k, v in seq.values.items()}})


def cmd_width(args, inputs):
    W = _weights(inputs[0])
    value, k, d = gromov_width_witness(W)
    out = {"weights": fmt.weights_to_json(W), "gromov_width": fmt.encode_scalar(value)}
    if k is not None:
        out["binding_k"], out["binding_d"] = k, d
    return fmt.dumps(out)


def cmd_embed(args, inputs):
    W = _weights(inputs[0])
    if args.ball is None:
        raise fmt.ParseError("embed needs --ball")
    a = fmt.parse_rational(args.ball)
    t0 = time.perf_counter()
    cert = embed_ball_check(W, a)
    runtime = round(time.perf_counter() - t0, 6)
    text = fmt.dumps(fmt.certificate_to_json(cert, runtime))
    status = EXIT_OBSTRUCTED if (args.expect_embed and not cert.embeds) else EXIT_OK
    return text, status


def cmd_distance(args, inputs):
    if len(inputs) != 2:
        raise fmt.ParseError("distance needs two --input files")
    A, B = inputs
    if args.mode == "toric":
        d = hbm_distance(fmt._points(A, "vertices"), fmt._points(B, "vertices"), "toric", args.precision_bits)
    else:
        PA, PB = _polygon(A), _polygon(B)
        if args.mode == "product":
            d = hbm_distance(PA, PB, "product", args.precision_bits)
        else:
            d = inclusion_distance(PA, PB, args.precision_bits)
    return fmt.dumps(fmt.distance_to_json(d))


def cmd_classify(args, inputs):
    return fmt.dumps(fmt.verdict_to_json(normalized_capacity(_polygon(inputs[0]))))


def cmd_probe(args, inputs):
    return fmt.dumps(fmt.probe_to_json(viterbo_probe(_polygon(inputs[0]))))


def cmd_transfer(args, inputs):
    return fmt.dumps(fmt.transfer_to_json(toric_transfer(fmt._points(inputs[0], "vertices"))))


COMMANDS = {
    "analyze": cmd_analyze,
    "spectrum": cmd_spectrum,
    "ech": cmd_ech,
    "width": cmd_width,
    "embed": cmd_embed,
    "distance": cmd_distance,
    "classify": cmd_classify,
    "probe": cmd_probe,
    "transfer": cmd_transfer,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fiberwise", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", action="append", required=True, help="JSON input file ('-' for stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--format", help="json, csv or svg (default depends on the command)")
    p.add_argument("--kmax", type=int, default=5, help="largest k for the ech command")
    p.add_argument("--cutoff", help="action cutoff for the spectrum command")
    p.add_argument("--ball", help="ball capacity for the embed command")
    p.add_argument("--expect-embed", action="store_true", help="exit with 5 if embed finds an obstruction")
    p.add_argument("--mode", choices=["inclusion", "product", "toric"], default="inclusion")
    p.add_argument("--precision-bits", type=int, default=96)
    p.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    allowed = FORMATS[args.command]
    if args.format is None:
        args.format = allowed[0]
    if args.format not in allowed:
        print(f"error: --format {args.format} is not available for {args.command}", file=sys.stderr)
        return EXIT_PARSE
    if args.precision_bits < 53 or args.jobs < 1:
        print("error: --precision-bits must be >= 53 and --jobs >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        inputs = [_read(path) for path in args.input]
        result = COMMANDS[args.command](args, inputs)
    except fmt.ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (NonTerminating, RecursionError) as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (GeometryError, TailBoundFails, ValueError, TypeError) as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    status = EXIT_OK
    if isinstance(result, tuple):
        result, status = result
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
