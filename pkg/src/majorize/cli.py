"""Command-line front end.  Every invocation prints one JSON report.

Exit codes: 0 predicate true / construction succeeded, 1 predicate false,
2 usage or input error, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .chains import (BirkhoffDecomposition, MajorizationChain, birkhoff_decompose,
                     birkhoff_problems, build_chain, chain_problems,
                     doubly_stochastic_problem, hlp_matrix, mat_vec, matrix_from_json)
from .core import RVector, format_rational, majorizes
from .errors import InputError, InvariantError, MajorizeError
from .hull import (MembershipCertificate, SeparationCertificate, certificate_problem,
                   is_member, membership, orbit_map)
from .means import Mode, amgm_certificate, compare_means, symmetric_mean
from .multiplicative import MultiplicativePair, augment, check_prefix_products, sum_dominance
from .perms import (DEFAULT_GROUP_CAP, MAX_SYMMETRIC_DEGREE, PermGroup,
                    full_symmetric_group, generate_group, parse_cycles)
from .rado import (RadoWitness, build_rado_witness, probe_constant, probe_step_vectors,
                   witness_problem)

SCHEMA = "majorize/1"
EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Result:
    def __init__(self, ok: bool, payload: dict, transcript: Optional[list] = None):
        self.ok = ok
        self.payload = payload
        self.transcript = transcript


# -- parsing -----------------------------------------------------------------

def parse_vector(text) -> RVector:
    """'["1/2","3"]' -> RVector(1/2, 3).  Also accepts an already-decoded list."""
    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON vector {text!r}") from exc
    else:
        data = text
    if not isinstance(data, list):
        raise InputError(f"vector must be a JSON array, got {text!r}")
    if any(isinstance(v, float) for v in data):
        raise InputError("write rationals as strings like \"1/3\", not JSON floats")
    return RVector(data)


def group_cap() -> int:
    raw = os.environ.get("MAJORIZE_GROUP_CAP")
    if raw is None:
        return DEFAULT_GROUP_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"MAJORIZE_GROUP_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InputError("MAJORIZE_GROUP_CAP must be positive")
    return cap


def parse_group(text, n: int) -> PermGroup:
    """'S' -> S_n; 'e' -> trivial; '(1,2);(1,2,3)' or a JSON list -> generated subgroup."""
    cap = group_cap()
    if isinstance(text, list):
        gens_text = text
    else:
        s = text.strip()
        if s.upper() in ("S", f"S{n}", f"S_{n}", "SYM"):
            if n > MAX_SYMMETRIC_DEGREE:
                raise InputError(f"S_n supported only for n <= {MAX_SYMMETRIC_DEGREE}")
            if math.factorial(n) > cap:
                raise InputError(f"|S_{n}| = {math.factorial(n)} exceeds group cap {cap}")
            return full_symmetric_group(n)
        if s.startswith("["):
            try:
                gens_text = json.loads(s)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed generator list {text!r}") from exc
        else:
            gens_text = [g for g in s.split(";") if g.strip()]
    if s_is_trivial(gens_text):
        gens_text = []
    gens = [parse_cycles(g, n) for g in gens_text]
    return generate_group(n, gens, cap=cap)


def s_is_trivial(gens: Sequence[str]) -> bool:
    return all(g.strip() in ("e", "()", "trivial", "") for g in gens)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--quiet", action="store_true", help="print only schema and status")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="majorize", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--stdin", action="store_true",
                        help="read one JSON request object from standard input")
    _common(parser)
    nouns = parser.add_subparsers(dest="noun", required=True, parser_class=_Parser)

    verbs = {}

    def leaf(noun, name, func, **opts):
        if noun not in verbs:
            verbs[noun] = nouns.add_parser(noun).add_subparsers(
                dest="verb", required=True, parser_class=_Parser)
        p = verbs[noun].add_parser(name)
        _common(p)
        for flag, kw in opts.items():
            p.add_argument("--" + flag.replace("_", "-"), **kw)
        p.set_defaults(func=func, command_name=f"{noun} {name}")
        return p

    req = {"required": True}
    group_opt = {"default": "S", "help": "'S', 'e', or generators like '(1,2,3);(1,2)'"}
    mode_opt = {"default": "exact", "choices": ["exact", "float"]}

    leaf("major", "check", cmd_major_check, a=req, b=req)
    leaf("major", "chain", cmd_major_chain, a=req, b=req)

    leaf("mean", "eval", cmd_mean_eval, x=req, a=req, group=group_opt, mode=mode_opt)
    leaf("mean", "compare", cmd_mean_compare, x=req, a=req, b=req, group=group_opt, mode=mode_opt)
    leaf("mean", "amgm", cmd_mean_amgm, a=req, b=req)

    leaf("hull", "member", cmd_hull_member, a=req, b=req, group=group_opt,
         allow_negative={"action": "store_true"})
    leaf("hull", "hlp", cmd_hull_hlp, a=req, b=req)
    leaf("hull", "orbit", cmd_hull_orbit, a=req, group=group_opt)

    leaf("rado", "witness", cmd_rado_witness, a=req, b=req, group=group_opt)
    leaf("rado", "probe", cmd_rado_probe, a=req, b=req, w={"default": "2"})

    leaf("multadd", "check", cmd_multadd_check, u=req, v=req)

    leaf("group", "enumerate", cmd_group_enumerate, n={"required": True, "type": int},
         group=group_opt)

    report_opt = {"required": True, "help": "path to a report emitted earlier, or '-' for stdin"}
    for kind in ("chain", "member", "hlp", "witness"):
        leaf("verify", kind, cmd_verify, report=report_opt)
    return parser


# -- commands ----------------------------------------------------------------

def _pair(args):
    a, b = parse_vector(args.a), parse_vector(args.b)
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    return a, b


def cmd_major_check(args):
    a, b = _pair(args)
    verdict = majorizes(a, b)
    return _Result(verdict.holds, verdict.to_json())


def cmd_major_chain(args):
    a, b = _pair(args)
    return _Result(True, build_chain(a, b).to_json())


def cmd_mean_eval(args):
    x, a = parse_vector(args.x), parse_vector(args.a)
    g = parse_group(args.group, len(x))
    value = symmetric_mean(x, a, g, Mode(args.mode))
    return _Result(True, {"value": value.to_json(), "mode": value.mode.value, "group_order": g.order})


def cmd_mean_compare(args):
    x = parse_vector(args.x)
    a, b = _pair(args)
    g = parse_group(args.group, len(x))
    return _Result(True, compare_means(x, a, b, g, Mode(args.mode)).to_json())


def cmd_mean_amgm(args):
    a, b = _pair(args)
    cert = amgm_certificate(a, b)
    return _Result(True, {"c": cert.c.to_json(), "all_zero": cert.all_zero,
                          "sum": format_rational(cert.c.total())})


def cmd_hull_member(args):
    a, b = _pair(args)
    g = parse_group(args.group, len(a))
    cert = membership(b, a, g, allow_negative=args.allow_negative)
    if is_member(cert):
        return _Result(True, {"member": True, "weights": cert.to_json()})
    return _Result(False, {"member": False, "certificate": cert.to_json()})


def cmd_hull_hlp(args):
    a, b = _pair(args)
    s = hlp_matrix(a, b)
    dec = birkhoff_decompose(s)
    return _Result(True, {"matrix": s.to_json(), "terms": dec.to_json()})


def cmd_hull_orbit(args):
    a = parse_vector(args.a)
    g = parse_group(args.group, len(a))
    pts = orbit_map(a, g)
    return _Result(True, {"orbit": [p.to_json() for p in pts], "size": len(pts)})


def cmd_rado_witness(args):
    a, b = _pair(args)
    g = parse_group(args.group, len(a))
    cert = membership(b, a, g)
    if is_member(cert):
        # b ∈ K_G(a): no witness can exist
        return _Result(False, {"member": True, "weights": cert.to_json()})
    w = build_rado_witness(cert, a, b, g)
    payload = {"member": False, "certificate": cert.to_json(), **w.to_json()}
    return _Result(True, payload, list(w.transcript))


def cmd_rado_probe(args):
    a, b = _pair(args)
    w = Fraction(args.w)
    hi, lo = probe_constant(a, b, w if w > 1 else 1 / w), probe_constant(a, b, 1 / w if w > 1 else w)
    steps = probe_step_vectors(a, b, w if w > 1 else 1 / w)
    implied = (hi.totals.value == "equal" and lo.totals.value == "equal"
               and all(p.asymptotic.value != "greater" for p in steps))
    return _Result(implied, {"constant": [hi.to_json(), lo.to_json()],
                             "steps": [p.to_json() for p in steps],
                             "implies_majorized": implied})


def cmd_multadd_check(args):
    u, v = parse_vector(args.u), parse_vector(args.v)
    pair = MultiplicativePair(u, v)
    check = check_prefix_products(u, v)
    payload = {"prefix_ok": check.ok}
    if not check.ok:
        payload["failing_j"] = check.failing_j
        return _Result(False, payload)
    payload["sum_u"] = format_rational(u.total())
    payload["sum_v"] = format_rational(v.total())
    if pair.diverging_index is None:
        payload.update(strict=False, augmentation=augment(pair).to_json())
        return _Result(True, payload)
    dom = sum_dominance(pair)
    payload.update(strict=dom.strict, augmentation=dom.augmentation.to_json(),
                   log_a=list(dom.log_a), log_b=list(dom.log_b),
                   log_majorized=dom.log_majorized,
                   diverging_index=pair.diverging_index)
    return _Result(True, payload)


def cmd_group_enumerate(args):
    g = parse_group(args.group, args.n)
    return _Result(True, g.to_json())


# -- verification of emitted reports ------------------------------------------

_VERIFIES = {"chain": "major chain", "member": "hull member",
             "hlp": "hull hlp", "witness": "rado witness"}


def _load_report(path: str, stdin=None) -> dict:
    try:
        if path == "-":
            return json.load(stdin or sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report {path!r}: {exc}") from exc


def cmd_verify(args):
    report = _load_report(args.report, getattr(args, "stdin_stream", None))
    expected = _VERIFIES[args.verb]
    if report.get("command") != expected:
        raise InputError(f"verify {args.verb} expects a '{expected}' report, got {report.get('command')!r}")
    try:
        inp = report["input"]
        a, b = parse_vector(inp["a"]), parse_vector(inp["b"])
        problems = _VERIFIERS[args.verb](report, inp, a, b)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"report is missing or has malformed fields: {exc}") from exc
    return _Result(not problems, {"verified": not problems, "problems": problems})


def _verify_chain(report, inp, a, b):
    return chain_problems(MajorizationChain.from_json(report), a, b)


def _verify_member(report, inp, a, b):
    g = parse_group(inp["group"], len(a))
    if report["member"]:
        cert = MembershipCertificate.from_json(report["weights"], len(a))
    else:
        cert = SeparationCertificate.from_json(report["certificate"])
    problem = certificate_problem(cert, b, a, g)
    return [problem] if problem else []


def _verify_hlp(report, inp, a, b):
    m = matrix_from_json(report["matrix"])
    problem = doubly_stochastic_problem(m)
    if problem:
        return [problem]
    out = []
    if mat_vec(m, a) != b:
        out.append("S a differs from b")
    dec = BirkhoffDecomposition(tuple(
        (Fraction(t["weight"]), parse_cycles(t["sigma"], len(a))) for t in report["terms"]))
    return out + birkhoff_problems(dec, m)


def _verify_witness(report, inp, a, b):
    g = parse_group(inp["group"], len(a))
    if report.get("member", True):
        return ["report carries no witness"]
    out = []
    problem = certificate_problem(SeparationCertificate.from_json(report["certificate"]), b, a, g)
    if problem:
        out.append(problem)
    w = RadoWitness(int(report["M"]), RVector(report["u"]), Fraction(report["margin"]),
                    RVector(report["x"]), None, None)
    problem = witness_problem(w, a, b, g)
    if problem:
        out.append(problem)
    return out


_VERIFIERS = {"chain": _verify_chain, "member": _verify_member,
              "hlp": _verify_hlp, "witness": _verify_witness}


# -- driver --------------------------------------------------------------------

_INPUT_KEYS = ("x", "a", "b", "u", "v", "w", "n", "group", "mode", "report")


def _request_to_argv(request: dict) -> list[str]:
    if not isinstance(request, dict) or "command" not in request:
        raise InputError("stdin request must be a JSON object with a 'command' field")
    argv = str(request["command"]).split()
    for key, value in request.items():
        if key == "command":
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif isinstance(value, (list, dict)):
            argv += [flag, json.dumps(value)]
        else:
            argv += [flag, str(value)]
    return argv


def _echo_input(args) -> dict:
    out = {}
    for key in _INPUT_KEYS:
        if hasattr(args, key):
            value = getattr(args, key)
            if key in ("x", "a", "b", "u", "v"):
                value = parse_vector(value).to_json()
            out[key] = value
    return out


def _emit(doc: dict, pretty: bool, out) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"), ensure_ascii=False)
    out.write(text + "\n")


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    pretty = "--pretty" in argv
    quiet = "--quiet" in argv
    command = None
    try:
        if "--stdin" in argv:
            request = json.load(stdin)
            argv = _request_to_argv(request) + [f for f in argv if f in ("--pretty", "--quiet")]
            pretty, quiet = "--pretty" in argv, "--quiet" in argv
        args = build_parser().parse_args(argv)
        command = args.command_name
        args.stdin_stream = stdin
        result = args.func(args)
    except InvariantError as exc:
        _emit({"schema": SCHEMA, "status": "error", "command": command,
               "error": f"internal invariant breach: {exc}"}, pretty, stdout)
        return EXIT_INTERNAL
    except (MajorizeError, ValueError, json.JSONDecodeError) as exc:
        _emit({"schema": SCHEMA, "status": "error", "command": command, "error": str(exc)},
              pretty, stdout)
        return EXIT_USAGE
    doc = {"schema": SCHEMA, "status": "ok" if result.ok else "false", "command": command}
    if not quiet:
        doc["input"] = _echo_input(args)
        doc.update(result.payload)
        if result.transcript:
            doc["transcript"] = result.transcript
    _emit(doc, pretty, stdout)
    return EXIT_OK if result.ok else EXIT_FALSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
