"""Command-line front end: `cycleprod <subcommand> ...`."""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance, oracle
from .bounds import BoundsError, bound_report, check_kl, n_k_l
from .decomposer import DecomposeError, Witness, decompose
from .extremal import ExtremalError, build_extremal, certify_nonmembership
from .perm_core import PermError, cycles_product, is_even, parse_cycle, parse_cycles

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.cmd} needs {', '.join(missing)}")


def _kl(args):
    _need(args, "k", "l")
    try:
        check_kl(args.k, args.l)
    except BoundsError as e:
        raise UsageError(str(e)) from None
    return args.k, args.l


def _sigma(args):
    _need(args, "perm")
    try:
        return parse_cycles(args.perm, args.n)
    except PermError as e:
        raise UsageError(str(e)) from None


def cmd_nkl(args) -> int:
    k, l = _kl(args)
    case = n_k_l(k, l)
    _emit(args, {"k": k, "l": l, "value": case.value, "rule": case.rule}, str(case))
    return EXIT_OK


def _report_numbers(sigma, k, l) -> dict:
    rep = bound_report(sigma, k, l)
    return {"kl": rep.kl, "m": rep.m, "c": rep.c, "slack": rep.slack,
            "verdicts": {name: v.as_dict() for name, v in rep.verdicts.items()}}


def cmd_decide(args) -> int:
    k, l = _kl(args)
    sigma = _sigma(args)
    n = sigma.degree
    base = {"k": k, "l": l, "n": n, "target": str(sigma)}
    nums = _report_numbers(sigma, k, l)
    if is_even(sigma) != ((k * (l - 1)) % 2 == 0):
        rec = {**base, "member": False, "certificate": "sign of sigma differs from the sign "
               "of every product of k l-cycles", **nums}
        _emit(args, rec, f"non-member: parity\n  {rec['certificate']}")
        return EXIT_NEGATIVE
    if l > n:
        raise UsageError("l exceeds the degree")
    nec = nums["verdicts"]["necessary"]
    if nec["status"] == "FAIL":
        rec = {**base, "member": False, "certificate": nec}
        _emit(args, rec, f"non-member: {nec['reason']}\n  slack = {nums['slack']} "
              f"(kl={nums['kl']}, m={nums['m']}, c={nums['c']})")
        return EXIT_NEGATIVE
    if n <= n_k_l(k, l).value and is_even(sigma):
        w = decompose(sigma, k, l, n, method="auto")
        rec = {**base, "member": True, "source": "theorem", "witness": w.as_dict()}
        _emit(args, rec, "member\n  " + " ".join(str(f) for f in w.factors))
        return EXIT_OK
    try:
        w = decompose(sigma, k, l, n, method="constructive", enforce_bound=False)
    except DecomposeError:
        w = None
    if w is not None:
        rec = {**base, "member": True, "source": "construction", "witness": w.as_dict()}
        _emit(args, rec, "member\n  " + " ".join(str(f) for f in w.factors))
        return EXIT_OK
    if n > args.ceiling:
        ind = nums["verdicts"].get("indecomposable")
        rec = {**base, "member": None, "guard": f"degree {n} above oracle ceiling "
               f"{args.ceiling}", "conditional": ind, **nums}
        why = ind["reason"] if ind else "no inequality applies"
        _emit(args, rec, f"undetermined: degree above ceiling {args.ceiling}\n  {why}")
        return EXIT_GUARD
    member = oracle.is_member_oracle(sigma, k, l, ceiling=args.ceiling)
    if member:
        fac = oracle.peel_witness(sigma, k, l, ceiling=args.ceiling)
        w = Witness(fac, sigma, l, "oracle-peel")
        w.validate()
        rec = {**base, "member": True, "source": "oracle", "witness": w.as_dict()}
        _emit(args, rec, "member\n  " + " ".join(str(f) for f in w.factors))
        return EXIT_OK
    rec = {**base, "member": False, "certificate": "oracle: type absent from level k", **nums}
    lines = [f"non-member: oracle (type absent from level {k} at degree {n})",
             f"  slack = {nums['slack']} (kl={nums['kl']}, m={nums['m']}, c={nums['c']})"]
    for name, v in nums["verdicts"].items():
        lines.append(f"  {name}: {v['status']} {v['reason']}")
    _emit(args, rec, "\n".join(lines))
    return EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    k, l = _kl(args)
    sigma = _sigma(args)
    try:
        w = decompose(sigma, k, l, sigma.degree, method=args.method)
    except DecomposeError as e:
        raise UsageError(str(e)) from None
    rec = w.as_dict()
    rec["method"] = w.method
    _emit(args, rec, " ".join(str(f) for f in w.factors))
    return EXIT_OK


def verify_record(rec: dict) -> tuple[bool, str]:
    try:
        n, l = int(rec["n"]), int(rec["l"])
        target = parse_cycles(rec["target"], n)
        factors = [parse_cycle(f) for f in rec["factors"]]
    except (KeyError, TypeError, ValueError) as e:
        return False, f"malformed record: {e}"
    if len(factors) != int(rec.get("k", len(factors))):
        return False, "factor count differs from k"
    if any(len(f) != l for f in factors):
        return False, "a factor has the wrong length"
    try:
        prod = cycles_product(factors, n)
    except PermError as e:
        return False, str(e)
    if prod != target:
        return False, f"product is {prod}, expected {target}"
    return True, "product verified"


def cmd_verify(args) -> int:
    if not args.file:
        raise UsageError("verify needs a witness file ('-' for stdin)")
    fh = sys.stdin if args.file == "-" else open(args.file)
    with fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    worst = EXIT_OK
    for i, ln in enumerate(lines, 1):
        try:
            rec = json.loads(ln)
        except json.JSONDecodeError as e:
            raise UsageError(f"line {i}: not JSON ({e})") from None
        if "witness" in rec:
            rec = rec["witness"]
        ok, why = verify_record(rec)
        _emit(args, {"line": i, "valid": ok, "reason": why}, f"line {i}: "
              f"{'valid' if ok else 'INVALID'} ({why})")
        if not ok:
            worst = EXIT_NEGATIVE
    return worst


def cmd_extremal(args) -> int:
    k, l = _kl(args)
    try:
        w = build_extremal(k, l)
    except ExtremalError as e:
        raise UsageError(str(e)) from None
    v = certify_nonmembership(w, ceiling=args.ceiling)
    rec = w.as_dict()
    rec["verdict"] = v.as_dict()
    c = w.certificate
    text = (f"{w.sigma}  (degree {w.n}, {w.shape})\n"
            f"  slack = {c['kl']} - {c['m']} - {c['c']} = {c['slack']}, threshold "
            f"{c['threshold']} ({c['mode']})\n  {v.status}: {v.reason}")
    _emit(args, rec, text)
    return EXIT_OK if v.status in ("UNCONDITIONAL", "CONDITIONAL") else EXIT_NEGATIVE


def cmd_oracle_table(args) -> int:
    _need(args, "n", "l", "k")
    try:
        for line in oracle.export_jsonl(args.n, args.l, args.k, ceiling=args.ceiling):
            print(line)
    except oracle.OraclePreconditionError as e:
        raise UsageError(str(e)) from None
    return EXIT_OK


def cmd_conjecture_scan(args) -> int:
    rows = acceptance.conjecture_rows(args.kmax, args.lmax)
    if args.json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
    else:
        print(f"{'k':>3} {'l':>3}  {'conjectured':>12}  {'actual':>6}  {'gap':>4}")
        for r in rows:
            lo, hi = r["conjectured"]
            mark = "  falsified" if r["falsified"] else ""
            print(f"{r['k']:>3} {r['l']:>3}  {f'[{lo},{hi}]':>12}  {r['actual']:>6}  "
                  f"{r['gap']:>4}{mark}")
    if args.fail_on_falsified and any(r["falsified"] for r in rows):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run_all(slow=args.slow)
    for r in results:
        _emit(args, {"criterion": r.number, "name": r.name, "passed": r.passed,
                     "detail": r.detail}, r.line())
    _emit(args, {"note": acceptance.SCOPE_NOTE}, acceptance.SCOPE_NOTE)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


COMMANDS = {"nkl": cmd_nkl, "decide": cmd_decide, "decompose": cmd_decompose,
            "verify": cmd_verify, "extremal": cmd_extremal, "oracle-table": cmd_oracle_table,
            "conjecture-scan": cmd_conjecture_scan, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cycleprod",
                                description="Products of l-cycles in alternating groups.")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--k", type=int)
        s.add_argument("--l", type=int)
        s.add_argument("--n", type=int)
        s.add_argument("--perm")
        s.add_argument("--ceiling", type=int, default=oracle.DEFAULT_CEILING)
        s.add_argument("--json", action="store_true")
        s.add_argument("--seed", type=int, default=0)
        if name == "decompose":
            s.add_argument("--method", choices=["auto", "oracle", "constructive"],
                           default="auto")
        if name == "verify":
            s.add_argument("file", nargs="?")
        if name == "conjecture-scan":
            s.add_argument("--kmax", type=int, default=9)
            s.add_argument("--lmax", type=int, default=8)
            s.add_argument("--fail-on-falsified", action="store_true")
        if name == "selftest":
            s.add_argument("--slow", action="store_true", help="include the degree-16 case")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.OracleGuardError as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
