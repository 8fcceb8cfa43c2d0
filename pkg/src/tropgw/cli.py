"""Command-line front end for the tropical pipeline and the oracle.

Subcommands: ``gen-arrangement``, ``scatter``, ``potential``,
``broken-lines``, ``invariant``, ``table``, ``oracle``, ``verify``.
All outputs are deterministic for fixed flags; rationals are serialized
as strings.  Exit codes: 0 success, 1 check failure, 2 usage error,
3 internal error.  The environment variable ``TROPGW_OUTDIR`` supplies
the directory for relative ``--out`` paths.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction

from .geometry import Arrangement, generate_arrangement
from .coeffring import RingConfig, Series, make_key
from .scattering import build_diagram, check_loop_identity
from .brokenlines import (enumerate_broken_lines, potential_W_k0,
                          potential_W_kmbar)
from .invariants import (DescendentKey, InvariantContext, check_tropfun,
                         classical_insertions, compatible_keys,
                         tropical_invariant)
from . import oracle


class CheckFailure(RuntimeError):
    """A verification check did not hold."""


# -- plumbing ---------------------------------------------------------------

def _out_path(path):
    base = os.environ.get("TROPGW_OUTDIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(_out_path(out), "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_arrangement(args):
    if getattr(args, "arr", None):
        with open(args.arr) as fh:
            return Arrangement.from_json(fh.read())
    return generate_arrangement(args.seed, args.k)


def _parse_r(text):
    if not text:
        return ()
    return tuple(int(t) for t in text.split(",") if int(t) != 0)


def _parse_at(text, default):
    if not text:
        return default
    a, b = text.split(",")
    return (Fraction(a), Fraction(b))


_INS_TOKEN = re.compile(
    r"^\s*(?:psi\^?(\d+)\s+)?T(\d)\s*(?:\*\s*(\d+))?\s*$")


def parse_insertions(text):
    """Parse an insertion list like ``"psi^1 T2, T2*3, T0"``.

    Each token is ``[psi^A] T<i> [*N]`` and contributes ``N`` copies of
    the class ``T_i`` with ``A`` psi-factors.
    """
    ins = []
    for tok in text.split(","):
        m = _INS_TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse insertion {tok!r}")
        a = int(m.group(1) or 0)
        i = int(m.group(2))
        n = int(m.group(3) or 1)
        if i > 2:
            raise ValueError(f"no class T{i} on the plane")
        ins.extend([(i, a)] * n)
    return ins


def _wall_obj(w):
    return {"base": [str(w.base[0]), str(w.base[1])],
            "direction": list(w.dirp), "weight": w.weight,
            "coeff": str(w.coeff), "xexp": list(w.xexp),
            "u": [list(p) for p in w.u], "marked_origin": w.origin}


# -- subcommands ------------------------------------------------------------

def cmd_gen_arrangement(args):
    arr = generate_arrangement(args.seed, args.k, box=args.box,
                               max_denom=args.max_denom)
    _emit(arr.to_obj(), args.out)
    return 0


def cmd_scatter(args):
    arr = _load_arrangement(args)
    diagram = build_diagram(arr, args.dmax, xcap=args.xcap,
                            max_order=args.max_order)
    singular = sorted({w.base for w in diagram.walls if w.origin is None})
    _emit({"k": arr.k, "dmax": args.dmax, "xcap": diagram.xcap,
           "walls": [_wall_obj(w) for w in diagram.walls],
           "singular_points": [[str(a), str(b)] for a, b in singular]},
          args.out)
    return 0


def cmd_potential(args):
    arr = _load_arrangement(args)
    diagram = build_diagram(arr, args.dmax, xcap=args.xcap)
    cfg = RingConfig(k=arr.k, mbar=args.mbar, xcap=diagram.xcap)
    at = _parse_at(args.at, arr.Q)
    w0 = potential_W_k0(diagram, at, cfg)
    wm = potential_W_kmbar(diagram, at, cfg)
    _emit({"k": arr.k, "dmax": args.dmax, "mbar": args.mbar,
           "at": [str(at[0]), str(at[1])],
           "W_k0": w0.to_obj(), "W_kmbar": wm.to_obj()}, args.out)
    return 0


def cmd_broken_lines(args):
    arr = _load_arrangement(args)
    diagram = build_diagram(arr, args.dmax, xcap=args.xcap)
    at = _parse_at(args.at, arr.Q)
    lines = []
    for line in enumerate_broken_lines(diagram, at):
        lines.append({
            "monomials": [{"coeff": str(c), "xexp": list(w),
                           "u": [list(p) for p in u]}
                          for c, w, u in line.monomials],
            "bends": [{"point": [str(p[0]), str(p[1])],
                       "wall": _wall_obj(wall)}
                      for p, wall in line.bends]})
    lines.sort(key=lambda rec: json.dumps(rec, sort_keys=True))
    _emit({"at": [str(at[0]), str(at[1])], "count": len(lines),
           "lines": lines}, args.out)
    return 0


def cmd_invariant(args):
    r = _parse_r(args.r)
    if args.arr:
        arr = _load_arrangement(args)
    else:
        k = args.k or max((len(r),) + r + (2,))
        arr = generate_arrangement(args.seed, k)
    key = DescendentKey(args.d, r, args.m, args.nu, args.cls)
    res = tropical_invariant(arr, key)
    _emit({"value": str(res.value),
           "sectors": {s: str(v) for s, v in sorted(res.sectors.items())}},
          args.out)
    return 0


def cmd_table(args):
    arr = _load_arrangement(args) if args.arr else \
        generate_arrangement(args.seed, args.kmax)
    ctx = InvariantContext(arr)
    keys = sorted(compatible_keys(arr.k, args.dmax, numax=args.numax),
                  key=lambda k: (k.d, k.r, k.m, k.nu, k.cls))
    entries = []
    for key in keys:
        val = tropical_invariant(arr, key, ctx).value
        entries.append({"d": key.d, "r": list(key.r), "m": key.m,
                        "nu": key.nu, "cls": key.cls, "value": str(val)})
    obj = {"kmax": arr.k, "dmax": args.dmax, "numax": args.numax,
           "seed": arr.seed, "entries": entries}
    if args.csv:
        lines = ["d,r,m,nu,cls,value"]
        lines += ["%d,%s,%d,%d,%d,%s" % (e["d"],
                                         "+".join(map(str, e["r"])),
                                         e["m"], e["nu"], e["cls"],
                                         e["value"])
                  for e in entries]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(_out_path(args.out), "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(obj, args.out)
    return 0


def _mseries_obj(ms):
    out = []
    for key in sorted(ms.terms):
        ty, y0, y1, y2, hb = key
        out.append({"ty": list(ty), "y0": y0, "y1": y1,
                    "y2": [list(p) for p in y2], "hbar": hb,
                    "coeff": str(ms.terms[key])})
    return out


def cmd_oracle(args):
    if args.mode == "jfun":
        caps = oracle.MirrorCaps(ty=args.dmax, y0=2, y1=args.dmax,
                                 y2tot=2, y2ord=2)
        _emit({"J": _mseries_obj(oracle.j_function(caps))}, args.out)
        return 0
    if args.mode == "verify-identities":
        failures = []
        for n in range(1, args.nmax + 1):
            if not oracle.harmonic_identity(n):
                failures.append(f"harmonic_identity({n})")
        for d in range(1, 4):
            for nu in range(4):
                for a in range(4):
                    for n0 in range(d + 1):
                        for n1 in range(d + 1):
                            for n2 in range(d + 1):
                                if not oracle.binomial_collapse_check(
                                        d, nu, n0, n1, n2, a):
                                    failures.append(
                                        f"binomial_collapse_check"
                                        f"({d},{nu},{n0},{n1},{n2},{a})")
        _emit({"pass": not failures, "failures": failures}, args.out)
        return 0 if not failures else 1
    if not args.ins:
        raise ValueError("oracle invariants need --ins")
    ins = parse_insertions(args.ins)
    val = oracle.classical_invariant(args.d, ins, strategy=args.strategy)
    _emit({"value": str(val)}, args.out)
    return 0


# -- verification suite ------------------------------------------------------

def _expect(name, got, expected, checks, t0):
    checks.append({"name": name, "status": "pass" if got == expected
                   else "fail", "expected": str(expected), "got": str(got),
                   "seconds": round(time.time() - t0, 3)})


def _verify_checks(tier, seed):
    checks = []

    t0 = time.time()
    _expect("oracle-kontsevich-N1..N4",
            [oracle.kontsevich_N(d) for d in (1, 2, 3, 4)],
            [1, 1, 12, 620], checks, t0)

    t0 = time.time()
    _expect("harmonic-identity-1..30",
            all(oracle.harmonic_identity(n) for n in range(1, 31)),
            True, checks, t0)

    t0 = time.time()
    _expect("binomial-collapse-grid",
            all(oracle.binomial_collapse_check(d, nu, n0, n1, n2, a)
                for d in range(1, 4) for nu in range(4) for a in range(4)
                for n0 in range(d + 1) for n1 in range(d + 1)
                for n2 in range(d + 1)),
            True, checks, t0)

    t0 = time.time()
    arr0 = Arrangement(Q=(Fraction(1, 7), Fraction(2, 9)), P=[])
    dg0 = build_diagram(arr0, 1)
    cfg0 = RingConfig(k=0, mbar=0, xcap=1)
    w0 = potential_W_k0(dg0, arr0.Q, cfg0)
    basic = (Series.monomial(cfg0, make_key(x=(1, 0, 0)))
             + Series.monomial(cfg0, make_key(x=(0, 1, 0)))
             + Series.monomial(cfg0, make_key(x=(0, 0, 1))))
    nlines = len(enumerate_broken_lines(dg0, arr0.Q))
    _expect("k0-potential-basic", (nlines, w0 == basic), (3, True),
            checks, t0)

    t0 = time.time()
    arr2 = generate_arrangement(seed, 2)
    ctx2 = InvariantContext(arr2)
    _expect("primary-count-d1",
            tropical_invariant(arr2, DescendentKey(1, (1,), 0, 0, 0),
                               ctx2).value,
            Fraction(1), checks, t0)

    t0 = time.time()
    dg2 = build_diagram(arr2, 2, xcap=2)
    cfg2 = RingConfig(k=2, mbar=0, xcap=2)
    sing = sorted({w.base for w in dg2.walls if w.origin is None})
    _expect("loop-identity-k2",
            all(check_loop_identity(dg2, pt, cfg2) for pt in sing),
            True, checks, t0)

    t0 = time.time()
    ok = True
    for key in compatible_keys(2, 1):
        if key.m >= 1 and (key.d > 0 or len(key.r) + key.m > 2):
            ok = ok and check_tropfun(arr2, key, ctx2)
    _expect("fundamental-class-k2-d1", ok, True, checks, t0)

    if tier in ("standard", "extended"):
        t0 = time.time()
        arr5 = generate_arrangement(seed, 5)
        _expect("primary-count-d2",
                tropical_invariant(arr5, DescendentKey(2, (1,) * 4, 0, 0, 0),
                                   InvariantContext(arr5)).value,
                Fraction(1), checks, t0)

        t0 = time.time()
        arr3 = generate_arrangement(seed, 3)
        dg3 = build_diagram(arr3, 2, xcap=2)
        cfg3 = RingConfig(k=3, mbar=0, xcap=2)
        sing = sorted({w.base for w in dg3.walls if w.origin is None})
        _expect("loop-identity-k3",
                all(check_loop_identity(dg3, pt, cfg3) for pt in sing),
                True, checks, t0)

        t0 = time.time()
        ctx3 = InvariantContext(arr3)
        ok = True
        for key in compatible_keys(3, 1):
            if key.d <= 1 and key.m >= 1 and (key.d > 0
                                              or len(key.r) + key.m > 2):
                ok = ok and check_tropfun(arr3, key, ctx3)
        _expect("fundamental-class-k3-d1", ok, True, checks, t0)

        t0 = time.time()
        ok = True
        for key in compatible_keys(3, 1):
            if key.d <= 1:
                tv = tropical_invariant(arr3, key, ctx3).value
                cv = oracle.classical_invariant(key.d,
                                                classical_insertions(key))
                ok = ok and tv == cv
        _expect("oracle-equality-k3-d1", ok, True, checks, t0)

    if tier == "extended":
        t0 = time.time()
        arr8 = generate_arrangement(seed, 8)
        _expect("primary-count-d3",
                tropical_invariant(arr8, DescendentKey(3, (1,) * 7, 0, 0, 0),
                                   InvariantContext(arr8)).value,
                Fraction(12), checks, t0)

    return checks


def cmd_verify(args):
    checks = _verify_checks(args.tier, args.seed)
    ok = all(c["status"] == "pass" for c in checks)
    for c in checks:
        line = "%-28s %-4s %6.2fs" % (c["name"], c["status"].upper(),
                                      c["seconds"])
        if c["status"] == "fail":
            line += "  expected %s, got %s" % (c["expected"], c["got"])
        print(line)
    print("overall:", "PASS" if ok else "FAIL")
    if args.out:
        _emit({"tier": args.tier, "seed": args.seed, "pass": ok,
               "checks": checks}, args.out)
    return 0 if ok else 1


# -- argument parsing --------------------------------------------------------

def build_parser():
    top = argparse.ArgumentParser(
        prog="tropgw",
        description="Descendent tropical Gromov-Witten invariants of the "
                    "plane, with a classical oracle.")
    sub = top.add_subparsers(dest="command", required=True)

    def common_out(p):
        p.add_argument("--out", help="output file (JSON); default stdout; "
                       "relative paths resolve under $TROPGW_OUTDIR")

    p = sub.add_parser("gen-arrangement", help="sample a general point "
                       "arrangement")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--box", type=int, default=4)
    p.add_argument("--max-denom", type=int, default=10**6)
    common_out(p)
    p.set_defaults(func=cmd_gen_arrangement)

    p = sub.add_parser("scatter", help="build the scattering diagram")
    p.add_argument("--arr", help="arrangement JSON file")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--xcap", type=int)
    p.add_argument("--max-order", type=int)
    common_out(p)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("potential", help="Landau-Ginzburg potentials at a "
                       "point")
    p.add_argument("--arr")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--mbar", type=int, default=0)
    p.add_argument("--xcap", type=int)
    p.add_argument("--at", help="endpoint as 'x,y' rationals (default Q)")
    common_out(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("broken-lines", help="enumerate broken lines with "
                       "bend records")
    p.add_argument("--arr")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dmax", type=int, default=2)
    p.add_argument("--xcap", type=int)
    p.add_argument("--at", help="endpoint as 'x,y' rationals (default Q)")
    common_out(p)
    p.set_defaults(func=cmd_broken_lines)

    p = sub.add_parser("invariant", help="one descendent tropical invariant")
    p.add_argument("--arr")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", default="", help="comma list of psi-orders+1 at "
                   "marked points, e.g. 2,1,1")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--cls", type=int, default=0, choices=(0, 1, 2))
    common_out(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("table", help="full compatible-key invariant table")
    p.add_argument("--arr")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--dmax", type=int, default=1)
    p.add_argument("--numax", type=int, default=4)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="emit CSV instead of "
                   "JSON")
    common_out(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("oracle", help="classical Gromov-Witten oracle")
    p.add_argument("mode", nargs="?", default="invariant",
                   choices=("invariant", "jfun", "verify-identities"))
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--ins", help="insertions, e.g. 'psi^1 T2, T2*3, T0'")
    p.add_argument("--strategy", default="default")
    p.add_argument("--dmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=30)
    common_out(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--tier", default="quick",
                   choices=("quick", "standard", "extended"))
    p.add_argument("--seed", type=int, default=1)
    common_out(p)
    p.set_defaults(func=cmd_verify)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - contract: 3 = internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
