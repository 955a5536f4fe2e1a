"""``closure`` command line.

Exit codes: 0 member/true, 1 not member/false, 2 not found within the search
bounds, 64 usage error, 65 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cech, closures, exactness, forcing, partitions
from .closures import MEMBER, NOT_FOUND, ClosureCertificate, SearchBounds
from .groebner import ModuleVector, SaturationCutoffError
from .ideals import CertificateDefect, CharacteristicError, FPModule, Ideal, SubmoduleData
from .text import (ParseError, dumps, parse_ideal_list, parse_matrix, parse_polylist, parse_vector,
                   print_canonical, print_ring, ring_from_text)

EXIT_TRUE, EXIT_FALSE, EXIT_NOT_FOUND, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument helpers


def _ring(args):
    if not args.ring:
        raise UsageError("--ring is required")
    return ring_from_text(args.ring)


def _need(args, *names):
    for n in names:
        if getattr(args, n) in (None, ""):
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.command}")


def _bounds(args) -> SearchBounds:
    return SearchBounds(args.e_max, args.n_max, args.r_max, args.t_max, args.sat_max)


def _ideal(R, text) -> Ideal:
    return Ideal(R, parse_polylist(text or "", R))


def _module_data(args, R) -> SubmoduleData:
    """``--module-presentation`` (row-major, rows are components), ``--submodule``
    (generators separated by ';', entries by ','), ``--element`` (entries by ',')."""
    m = parse_vector(args.element, R) if args.element else None
    if args.module_presentation:
        rows = parse_matrix(args.module_presentation, R)
        M = FPModule.from_matrix(R, rows)
    else:
        if m is None:
            raise UsageError("--element or --module-presentation is needed to fix the rank")
        M = FPModule.free(R, len(m))
    N = []
    if args.submodule:
        for row in parse_matrix(args.submodule, R):
            N.append(ModuleVector(row, R))
    return SubmoduleData(M, N, m)


def _is_module_query(args) -> bool:
    return bool(args.module_presentation or args.submodule)


def _ideal_data(args, R):
    _need(args, "element")
    return _ideal(R, args.ideal), R(args.element)


# ---------------------------------------------------------------------------
# output


class Outcome:
    def __init__(self, code: int, payload: dict, text: str):
        self.code, self.payload, self.text = code, payload, text


def _cert_outcome(cert: ClosureCertificate) -> Outcome:
    code = {MEMBER: EXIT_TRUE, NOT_FOUND: EXIT_NOT_FOUND}.get(cert.verdict, EXIT_FALSE)
    lines = [f"{cert.closure}: {cert.verdict}"]
    for k in ("exponent", "level", "q", "reduction_degree", "factors"):
        if k in cert.witness:
            lines.append(f"  {k} = {cert.witness[k]}")
    return Outcome(code, cert.to_dict(), "\n".join(lines))


def _bool_outcome(flag: bool | None, payload: dict, label: str) -> Outcome:
    if flag is None:
        return Outcome(EXIT_NOT_FOUND, payload, f"{label}: not_found_within_bound")
    return Outcome(EXIT_TRUE if flag else EXIT_FALSE, payload, f"{label}: {'true' if flag else 'false'}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_radical(args):
    R = _ring(args)
    return _cert_outcome(closures.radical_closure_member(_ideal_data(args, R)))


def cmd_radical_module(args):
    R = _ring(args)
    _need(args, "element")
    return _cert_outcome(closures.radical_closure_member(_module_data(args, R)))


def cmd_frobenius(args):
    R = _ring(args)
    data = _module_data(args, R) if _is_module_query(args) else _ideal_data(args, R)
    return _cert_outcome(closures.frobenius_closure_member(data, _bounds(args)))


def cmd_ratliff_rush(args):
    R = _ring(args)
    _need(args, "ideal")
    I = _ideal(R, args.ideal)
    if not args.element:
        C = closures.ratliff_rush_closure(I, _bounds(args))
        gens = [print_canonical(g) for g in C.gens]
        return Outcome(EXIT_TRUE, {"closure": gens}, "ratliff_rush closure: " + "; ".join(gens))
    return _cert_outcome(closures.ratliff_rush_member(I, R(args.element), _bounds(args)))


def cmd_delta(args):
    R = _ring(args)
    _need(args, "delta")
    I, f = _ideal_data(args, R)
    delta = [Ideal(R, gens) for gens in parse_ideal_list(args.delta, R)]
    return _cert_outcome(closures.delta_closure_member(I, f, delta, _bounds(args)))


def cmd_integral(args):
    R = _ring(args)
    I, f = _ideal_data(args, R)
    return _cert_outcome(closures.integral_closure_member(I, f, _bounds(args)))


def cmd_support(args):
    R = _ring(args)
    _need(args, "ideal")
    J = _ideal(R, args.ideal)
    if args.element:
        return _cert_outcome(closures.support_closure_member(_module_data(args, R), J, _bounds(args)))
    if not args.submodule:
        raise UsageError("support needs --submodule (and optionally --element)")
    rows = parse_matrix(args.submodule, R)
    mu = len(rows[0])
    M = FPModule.from_matrix(R, parse_matrix(args.module_presentation, R)) if args.module_presentation \
        else FPModule.free(R, mu)
    S = SubmoduleData(M, [ModuleVector(r, R) for r in rows])
    sc = closures.support_closure(S, J, _bounds(args))
    gens = [[print_canonical(x) for x in v] for v in sc.generators]
    payload = {"generators": gens, "exponent": sc.exponent, "certificate": sc.certificate}
    text = f"support closure (exponent {sc.exponent}): " + "; ".join(", ".join(v) for v in gens)
    return Outcome(EXIT_TRUE, payload, text)


def cmd_symbolic(args):
    R = _ring(args)
    _need(args, "ideal", "s")
    sp = closures.symbolic_power(_ideal(R, args.ideal), args.power, R(args.s))
    gens = [print_canonical(g) for g in sp.ideal.gens]
    q = {"ring": print_ring(R), "ideal": args.ideal, "n": args.power}
    payload = {"query": q, "generators": gens, "certificate": sp.certificate}
    if args.element:
        member = sp.ideal.contains(R(args.element))
        payload["element"] = print_canonical(R(args.element))
        payload["member"] = member
        return Outcome(EXIT_TRUE if member else EXIT_FALSE, payload,
                       f"symbolic power: {'; '.join(gens)}\nelement {'is' if member else 'is not'} a member")
    return Outcome(EXIT_TRUE, payload, "symbolic power: " + "; ".join(gens))


def cmd_plus_witness(args):
    R = _ring(args)
    _need(args, "witness_ring")
    S = ring_from_text(args.witness_ring)
    I, f = _ideal_data(args, R)
    return _cert_outcome(closures.plus_witness_check(R, S, I, f))


def cmd_compatible(args):
    R = _ring(args)
    _need(args, "witness_ring", "element")
    S = ring_from_text(args.witness_ring)
    return _cert_outcome(closures.compatible_certificate(R, S, args.element))


def _forcing(args):
    R = _ring(args)
    _need(args, "element")
    return forcing.build_forcing(_module_data(args, R))


def cmd_forcing_section(args):
    F = _forcing(args)
    sec = forcing.has_ring_section(F)
    payload = {"forcing_ring": print_ring(F.ring), "section": sec.exists}
    if sec.exists:
        payload["values"] = [print_canonical(v) for v in sec.values]
    return _bool_outcome(sec.exists, payload, "ring section")


def cmd_forcing_surjective(args):
    F = _forcing(args)
    cert = forcing.is_spec_surjective(F)
    payload = {"forcing_ring": print_ring(F.ring), "surjective": cert.surjective,
               "levels": [{"k": k, "exponents": [e for _, e, _, _ in entries]} for k, entries in cert.levels]}
    if cert.failed:
        payload["failed"] = {"k": cert.failed[0], "minor": print_canonical(cert.failed[1])}
    return _bool_outcome(cert.surjective, payload, "spec-surjective")


def _matrices(args, R, count=None):
    mats = [parse_matrix(t, R) for t in (args.matrix or [])]
    if count is not None and len(mats) != count:
        raise UsageError(f"{args.command} needs exactly {count} --matrix arguments")
    return mats


def cmd_exact_surjective(args):
    R = _ring(args)
    if args.complex:
        mats = _matrices(args, R)
        if not mats:
            raise UsageError("--complex needs at least one --matrix")
        # given in application order; the complex stores maps[k]: F_{k+1} -> F_k
        C = exactness.FreeComplex(R, list(reversed(mats)))
        cert = exactness.surjective_exact_complex(C)
        payload = {"exact": cert.exact, "expected_ranks": cert.expected_ranks, "failed_map": cert.failed_map}
        return _bool_outcome(cert.exact, payload, "surjective-exact complex")
    alpha, beta = _matrices(args, R, 2)
    cert = exactness.surjective_exact_pair(alpha, beta, R)
    return _bool_outcome(cert.exact, cert.to_dict(), "surjective-exact pair")


def cmd_phantom(args):
    R = _ring(args)
    alpha, beta = _matrices(args, R, 2)
    target = parse_matrix(args.target_presentation, R) if args.target_presentation else None
    params = {}
    if args.closure == "support":
        _need(args, "ideal")
        params["J"] = _ideal(R, args.ideal)
    if args.closure == "delta":
        _need(args, "delta")
        params["delta"] = [Ideal(R, g) for g in parse_ideal_list(args.delta, R)]
    res = exactness.phantom_exact(alpha, beta, R, args.closure, _bounds(args), target=target, **params)
    payload = {"verdict": res.verdict, "kernel": [[print_canonical(x) for x in v] for v in res.kernel],
               "certificates": [c.to_dict() for c in res.certificates]}
    return _bool_outcome(res.verdict, payload, f"phantom exact ({args.closure})")


def cmd_partition(args):
    R = _ring(args)
    I, f = _ideal_data(args, R)
    res = partitions.canonical_radical_partition(I, f)
    lines = [f"{len(res.pieces)} pieces"]
    for p in res.pieces:
        lines.append(f"  cut ({', '.join(print_canonical(c) for c in p.cut)}), multiplier {print_canonical(p.multiplier)}")
    lines += [f"  note: {n}" for n in res.notes]
    return Outcome(EXIT_TRUE, res.to_dict(), "\n".join(lines))


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    stripped = arg.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return arg
    with open(arg, encoding="utf-8") as fh:
        return fh.read()


def cmd_cech(args):
    _need(args, "input")
    C = cech.CechComplex.from_json(_read_text(args.input))
    dims = cech.cohomology_dims(C)
    payload = {"field": str(C.field), "dims": C.dims, "cohomology": dims}
    return Outcome(EXIT_TRUE, payload, "cohomology dimensions: " + ", ".join(map(str, dims)))


def cmd_verify(args):
    _need(args, "cert")
    data = json.loads(_read_text(args.cert))
    if "pieces" in data:
        ok = partitions.verify_partition(data)
    else:
        ok = closures.verify_certificate(data)
    return _bool_outcome(ok, {"verified": ok}, "certificate")


COMMANDS = {
    "radical": cmd_radical, "radical-module": cmd_radical_module, "frobenius": cmd_frobenius,
    "ratliff-rush": cmd_ratliff_rush, "delta": cmd_delta, "integral": cmd_integral, "support": cmd_support,
    "symbolic": cmd_symbolic, "plus-witness": cmd_plus_witness, "compatible": cmd_compatible,
    "forcing-section": cmd_forcing_section, "forcing-surjective": cmd_forcing_surjective,
    "exact-surjective": cmd_exact_surjective, "phantom": cmd_phantom, "partition": cmd_partition,
    "cech": cmd_cech, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    d = SearchBounds()
    common = _Parser(add_help=False)
    common.add_argument("--ring")
    common.add_argument("--ideal", help="generators separated by ';'")
    common.add_argument("--element")
    common.add_argument("--matrix", action="append", help="row-major; rows ';', entries ','")
    common.add_argument("--module-presentation", help="presentation matrix, row-major")
    common.add_argument("--submodule", help="generators separated by ';', entries by ','")
    common.add_argument("--delta", help="ideals separated by ';;'")
    common.add_argument("--witness-ring")
    common.add_argument("--s")
    common.add_argument("--power", type=int, default=2, help="symbolic power exponent")
    common.add_argument("--closure", default="identity", choices=closures.CLOSURES)
    common.add_argument("--target-presentation", help="codomain of beta as R^c / im(matrix)")
    common.add_argument("--complex", action="store_true", help="treat the matrices as a whole complex")
    common.add_argument("--input", help="Čech complex JSON (text, path or '-')")
    common.add_argument("--cert", help="certificate JSON (text, path or '-')")
    common.add_argument("--e-max", type=int, default=d.e_max)
    common.add_argument("--n-max", type=int, default=d.n_max)
    common.add_argument("--r-max", type=int, default=d.r_max)
    common.add_argument("--t-max", type=int, default=d.t_max)
    common.add_argument("--sat-max", type=int, default=d.sat_max)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--cert-out")
    p = _Parser(prog="closure", description="Closure operations, forcing algebras and exactness tests.",
                allow_abbrev=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], allow_abbrev=False)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        out = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        if exc.text:
            print(exc.caret(), file=stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (CharacteristicError, SaturationCutoffError, CertificateDefect, closures.CertificateError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.output == "json":
        print(dumps(out.payload), file=stdout)
    else:
        print(out.text, file=stdout)
    if args.cert_out:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            fh.write(dumps(out.payload) + "\n")
    return out.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
