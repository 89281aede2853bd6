"""Command-line interface: JSON in, JSON out.

Input is a JSON object read from the file named on the command line, or from
standard input when no file (or ``-``) is given.  Exact scalars are written as
strings; series and polynomials in ``t`` may be given either as an expression
string (``"t^2 + e"``) or as a list of ascending coefficient strings.

Exit codes: 0 on success, 1 on a domain error (a JSON ``{"error": ...}``
object is printed), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import arcs, campaigns, groupoid, weierstrass, zr
from .algebra.matrix import SquareMatrix, det_and_adjugate
from .algebra.mpoly import exact_divide
from .algebra.parser import parse_poly
from .algebra.scalars import parse_ring
from .algebra.series import TruncSeries
from .algebra.upoly import QuotientRing, UPoly, parse_upoly
from .errors import AlgebraError
from .system import SystemF


class UsageError(Exception):
    pass


# -- JSON helpers ------------------------------------------------------------------------------

def _need(data, key):
    if key not in data:
        raise UsageError(f"missing input field {key!r}")
    return data[key]


def _ring(args, data):
    spec = args.ring or data.get("ring")
    if spec is None and isinstance(data.get("system"), dict):
        spec = data["system"].get("ring")
    return parse_ring(spec or "QQ")


def _trunc(args, data, key="T"):
    if args.trunc is not None:
        return args.trunc
    return int(_need(data, key))


def _upoly(value, R) -> UPoly:
    if isinstance(value, list):
        return UPoly(R, [R(str(c)) for c in value])
    return parse_upoly(str(value), R)


def _series(value, R, T) -> TruncSeries:
    return TruncSeries.from_poly(_upoly(value, R), T)


def _scalars(values, R):
    return [R(str(v)) for v in values]


def _system(data, R) -> SystemF:
    s = _need(data, "system")
    if isinstance(s, str):
        s = {"f": [s]}
    f = list(_need(s, "f"))
    n = int(s.get("n", 1))
    l = int(s.get("l", len(f)))
    return SystemF(R, n, l, f, s.get("xvars"), s.get("yvars"))


def _point(value, R):
    return (_scalars(_need(value, "x"), R), _scalars(_need(value, "y"), R))


def _arc(value, R, T):
    return ([_series(v, R, T) for v in _need(value, "x")], [_series(v, R, T) for v in _need(value, "y")])


def _arc_json(xs, ys):
    T = min(s.T for s in list(xs) + list(ys))
    return {"x": [s.to_json()["coeffs"] for s in xs], "y": [s.to_json()["coeffs"] for s in ys], "T": T}


def _zr_point(S, value, ext=False):
    R = S.ring
    make = zr.ZrExtPoint.make if ext else zr.ZrPoint.make
    return make(S, int(_need(value, "r")), _upoly(_need(value, "q"), R),
                [_upoly(v, R) for v in _need(value, "xbar")],
                [_upoly(v, R) for v in _need(value, "ybar")])


def _arrow(S, value):
    R = S.ring
    x, y = _point(_need(value, "base"), R)
    return groupoid.Arrow.make(S, int(_need(value, "r")), x, y,
                               _scalars(_need(value, "xi"), R), _scalars(_need(value, "eta"), R))


def _arrow_json(a):
    out = a.to_json()
    tx, ty = groupoid.target(a)
    out["target"] = {"x": [str(c) for c in tx], "y": [str(c) for c in ty]}
    return out


def _matrix_json(M):
    return [[str(M[i, j]) for j in range(M.size)] for i in range(M.size)]


# -- commands ----------------------------------------------------------------------------------

def cmd_wdiv(args, data):
    R = _ring(args, data)
    op = data.get("op", "divide")
    if op == "divide":
        T = _trunc(args, data)
        return weierstrass.weierstrass_divide(_series(_need(data, "F"), R, T)).to_json()
    if op == "remainder":
        q = _upoly(_need(data, "q"), R)
        if "T" in data or args.trunc is not None:
            g = _series(_need(data, "g"), R, _trunc(args, data))
            h, rem = weierstrass.divide_with_remainder(g, q)
            return {"h": h.to_json()["coeffs"], "rem": str(rem), "T": h.T}
        h, rem = weierstrass.divide_with_remainder(_upoly(_need(data, "g"), R), q)
        return {"h": str(h), "rem": str(rem)}
    if op == "factor-arc":
        alpha, u = weierstrass.factor_arc(_series(_need(data, "x"), R, _trunc(args, data)))
        return {"alpha": str(alpha), "u": u.to_json()["coeffs"], "T": u.T}
    raise UsageError(f"unknown wdiv op {op!r}")


def cmd_alg(args, data):
    R = _ring(args, data)
    names = list(data.get("vars", []))
    what = args.action
    if what == "parse":
        p = parse_poly(_need(data, "text"), names, R)
        return {"poly": str(p), "terms": p.to_json()["terms"]}
    if what == "eval":
        p = parse_poly(_need(data, "poly"), names, R)
        point = {}
        for k, v in _need(data, "point").items():
            if isinstance(v, dict):
                point[k] = _series(_need(v, "series"), R, int(_need(v, "T")))
            else:
                point[k] = R(str(v))
        return {"value": str(p.eval(point))}
    if what == "diff":
        p = parse_poly(_need(data, "poly"), names, R)
        return {"derivative": str(p.derivative(_need(data, "var")))}
    if what == "divide":
        num = parse_poly(_need(data, "num"), names, R)
        den = parse_poly(_need(data, "den"), names, R)
        return {"quotient": str(exact_divide(num, den))}
    if what == "det":
        M = SquareMatrix([[parse_poly(str(e), names, R) for e in row] for row in _need(data, "matrix")])
        det, adj = det_and_adjugate(M)
        return {"det": str(det), "adj": _matrix_json(adj)}
    if what == "invert":
        ctx = QuotientRing(R, _upoly(_need(data, "q"), R), int(_need(data, "m")))
        return {"inverse": str(ctx(_upoly(_need(data, "x"), R)).inverse())}
    raise UsageError(f"unknown alg action {what!r}")


def cmd_sys(args, data):
    R = _ring(args, data)
    S = _system(data, R)
    if args.action == "build":
        return {"n": S.n, "l": S.l, "f": [str(p) for p in S.f], "C": _matrix_json(S.C),
                "Q": str(S.Q), "Chat": _matrix_json(S.Chat),
                "Jx": [[str(e) for e in row] for row in S.Jx]}
    r = int(_need(data, "r"))
    ch = S.chart(r)
    return {"r": r, "xi": list(ch.xi), "eta": list(ch.eta), "u": [str(p) for p in ch.u], "v": str(ch.v)}


def cmd_zr(args, data):
    if args.action == "scan-r2":
        p = int(data.get("p", 5))
        if args.ring:
            R = parse_ring(args.ring)
            p = R.characteristic
        return zr.r2_counterexample_scan(str(data.get("P", "x")), p, int(data.get("max_witnesses", 5)))
    R = _ring(args, data)
    S = _system(data, R)
    if args.action == "check":
        pt = _zr_point(S, _need(data, "point"))
        out = zr.check_membership(pt).to_json()
        if "lifts" in data:
            lifts = [[_upoly(v, R) for v in lift] for lift in data["lifts"]]
            out["lift_independent"] = zr.lift_independence_check(pt, lifts)
        return out
    if args.action == "lift":
        return zr.newton_inverse(_zr_point(S, _need(data, "point"), ext=True)).to_json()
    if args.action == "forget":
        return zr.forget(_zr_point(S, _need(data, "point"))).to_json()
    if args.action == "from-arc":
        T = _trunc(args, data)
        return zr.arc_to_zr(S, _arc(_need(data, "arc"), R, T), int(_need(data, "r"))).to_json()
    # to-arc: the system and gamma0 live over the residue field
    T = _trunc(args, data)
    k = R.base
    Sk = _system(data, k)
    pt = _zr_point(Sk.base_change(R), _need(data, "point"))
    g0 = _need(data, "gamma0")
    G = int(g0.get("T", T + (R.a - 1) * R.a * pt.N + pt.N * (pt.r - 1)))
    gamma0 = _arc(g0, k, G)
    tail = None
    if "tail" in data:
        tail = [_series(v, R, T) for v in data["tail"]]
    xs, ys = zr.solve_z_system(Sk, gamma0, pt, T, tail=tail)
    return _arc_json(xs, ys)


def cmd_grp(args, data):
    if args.action == "fuzz":
        b = dict(data.get("bounds", {}))
        for key in ("p_max", "samples", "n_max", "l_max", "degree_max", "a_max"):
            val = getattr(args, key)
            if val is not None:
                b[key] = val
        b = {k.replace("-", "_"): v for k, v in b.items()}
        try:
            bounds = campaigns.Bounds(**b)
        except TypeError as exc:
            raise UsageError(str(exc)) from None
        seed = args.seed if args.seed is not None else int(data.get("seed", 0))
        campaign = args.campaign or data.get("campaign")
        if campaign is None:
            raise UsageError("--campaign is required")
        return campaigns.run_campaign(campaigns.FuzzConfig(seed, campaign, bounds))
    R = _ring(args, data)
    S = _system(data, R)
    act = args.action
    if act == "from-endpoints":
        p = _point(_need(data, "p"), R)
        pt = _point(_need(data, "ptilde"), R)
        return _arrow_json(groupoid.arrow_from_endpoints(S, int(_need(data, "r")), p, pt))
    if act == "unit":
        return _arrow_json(groupoid.unit(S, int(_need(data, "r")), _point(_need(data, "p"), R)))
    if act == "compose":
        return _arrow_json(groupoid.compose(_arrow(S, _need(data, "a1")), _arrow(S, _need(data, "a2"))))
    if act == "inverse":
        return _arrow_json(groupoid.inverse(_arrow(S, _need(data, "arrow"))))
    if act == "level":
        return _arrow_json(groupoid.level_map(_arrow(S, _need(data, "arrow"))))
    if act == "fiber":
        rep = groupoid.fiber_group(S, int(_need(data, "r")), _point(_need(data, "z"), R))
        out = rep.to_json()
        if data.get("fuzz"):
            out["fuzz"] = groupoid.group_axiom_fuzz(rep)
        return out
    if act == "lie":
        vecs = groupoid.lie_algebroid_basis(S, int(_need(data, "r")), _point(_need(data, "p"), R))
        return {"vectors": [[str(c) for c in w] for w in vecs]}
    raise UsageError(f"unknown grp action {act!r}")


def cmd_arc(args, data):
    R = _ring(args, data)
    act = args.action
    if act in ("factor", "unfactor"):
        n = int(_need(data, "n"))
        T = _trunc(args, data)
        inst = arcs.XYExampleInstance.make(str(_need(data, "g")), n, R, T)
        if act == "factor":
            a = _need(data, "arc")
            xs = [_series(v, R, T) for v in _need(a, "x")]
            if len(xs) != n + 1:
                raise UsageError(f"expected {n + 1} x-series")
            return arcs.factorize(inst, xs, _series(_need(a, "y"), R, T)).to_json()
        F = arcs.FactorizedDeformation(
            R(str(_need(data, "alpha"))), _series(_need(data, "u"), R, T),
            tuple(_scalars(_need(data, "xi"), R)),
            tuple(_series(v, R, T) for v in _need(data, "xtilde")))
        xs, y = arcs.unfactorize(inst, F)
        return _arc_json(xs, [y])
    k = R.base
    Sk = _system(data, k)
    S = Sk.base_change(R)
    if act == "split":
        T = _trunc(args, data)
        g0 = _need(data, "gamma0")
        gamma0 = _arc(g0, k, int(g0.get("T", T)))
        pt, tails = arcs.gk_split(Sk, gamma0, _arc(_need(data, "arc"), R, T), int(_need(data, "r")))
        return {"point": pt.to_json(), "tail": [s.to_json()["coeffs"] for s in tails], "T": T}
    # join
    T = _trunc(args, data)
    pt = _zr_point(S, _need(data, "point"))
    g0 = _need(data, "gamma0")
    G = int(g0.get("T", T + (R.a - 1) * R.a * pt.N + pt.N * (pt.r - 1)))
    tail = [_series(v, R, T) for v in data["tail"]] if "tail" in data else None
    xs, ys = arcs.gk_join(Sk, _arc(g0, k, G), pt, tail, T)
    return _arc_json(xs, ys)


# -- argument parsing --------------------------------------------------------------------------

def _common(p):
    p.add_argument("input", nargs="?", default="-", help="JSON input file (default: stdin)")
    p.add_argument("--ring", help="scalar ring, e.g. QQ, GF(7), QQ[e]/(e^2)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trunc", type=int, metavar="T", help="truncation order")
    p.add_argument("--out", choices=["json"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="newtongrp", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wdiv", help="Weierstrass division of a truncated series")
    _common(p)
    p.set_defaults(func=cmd_wdiv, action="divide")

    groups = {
        "alg": (cmd_alg, ["parse", "eval", "diff", "divide", "det", "invert"]),
        "sys": (cmd_sys, ["build", "chart"]),
        "zr": (cmd_zr, ["check", "lift", "forget", "scan-r2", "from-arc", "to-arc"]),
        "grp": (cmd_grp, ["from-endpoints", "compose", "inverse", "unit", "level", "fiber", "lie", "fuzz"]),
        "arc": (cmd_arc, ["factor", "unfactor", "split", "join"]),
    }
    for name, (func, actions) in groups.items():
        g = sub.add_parser(name)
        gsub = g.add_subparsers(dest="action", required=True)
        for act in actions:
            p = gsub.add_parser(act)
            _common(p)
            if name == "grp" and act == "fuzz":
                p.add_argument("--campaign", choices=campaigns.CAMPAIGNS)
                for key in ("p_max", "samples", "n_max", "l_max", "degree_max", "a_max"):
                    p.add_argument("--" + key.replace("_", "-"), dest=key, type=int)
            p.set_defaults(func=func)
    return parser


def _read_input(path, stdin):
    if path == "-":
        text = stdin.read() if not stdin.isatty() else ""
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    if not text.strip():
        return {}
    data = json.loads(text)
    if not isinstance(data, dict):
        raise UsageError("input must be a JSON object")
    return data


def _emit(obj, stream):
    stream.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def run_command(argv, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        data = _read_input(args.input, stdin)
        result = args.func(args, data)
    except AlgebraError as exc:
        _emit({"error": exc.to_json()}, stdout)
        return 1
    except (UsageError, OSError, ValueError) as exc:  # JSONDecodeError is a ValueError
        _emit({"error": {"code": "usage", "message": str(exc), "location": None}}, stdout)
        return 2
    _emit(result, stdout)
    return 0


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
