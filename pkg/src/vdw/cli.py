"""Command-line front end: ``vdw build|betti|morse|verify|mobius|bounds|table``.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from .complex import enumerate_faces, euler_characteristic, facets
from .errors import (
    DomainError,
    InvariantViolation,
    MatchingParseError,
    PreconditionError,
    StructuralError,
)
from .gamma import mobius_via_gamma, squarefree_critical_cell
from .homology import reduced_homology, wedge_signature
from .morse import (
    build_contractible_matching,
    build_example_matching,
    build_theorem_main_matching,
    check_structure,
    critical_cells,
    dump_matching,
    find_cycle,
    load_matching,
    morse_inequalities_check,
)
from .numtheory import (
    asymptotic_ratio,
    bound_certificate,
    contractible_by_theorem,
    is_squarefree,
    mobius,
    primorial_of_nth_prime,
    r_of_k,
)

TABLE_MAX_K = 8


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    params: dict[str, Any]
    outputs: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict[str, Any]:
        return {"command": self.command, "params": self.params,
                "outputs": self.outputs, "checks": self.checks, "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_tsv(self) -> str:
        lines = [f"command\t{self.command}"]
        for section in ("params", "outputs", "checks"):
            for key in sorted(getattr(self, section)):
                lines.append(f"{section}.{key}\t{_cell(getattr(self, section)[key])}")
        lines.append(f"ok\t{_cell(self.ok)}")
        return "\n".join(lines) + "\n"


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "NA"
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) if not isinstance(x, (list, tuple)) else ",".join(map(str, x))
                        for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_cell(x)}" for k, x in sorted(v.items()))
    return str(v)


def _face_str(f) -> str:
    return "{" + ",".join(map(str, f)) + "}"


def _homotopy_text(sig: tuple[int, int] | None) -> str | None:
    if sig is None:
        return None
    i, c = sig
    return "contractible" if c == 0 else f"(S^{i})^v{c}"


def cmd_build(n: int, k: int, list_faces: bool = False) -> RunReport:
    fs = enumerate_faces(n, k)
    rep = RunReport("build", {"n": n, "k": k})
    rep.outputs["facets"] = len(facets(n, k))
    rep.outputs["f_vector"] = {d: c for d, c in fs.counts().items() if d >= 0}
    rep.outputs["chi"] = euler_characteristic(fs)
    rep.outputs["reduced_chi"] = euler_characteristic(fs, reduced=True)
    if list_faces:
        rep.outputs["faces"] = [_face_str(f) for f in fs.nonempty()]
    return rep


def cmd_betti(n: int, k: int, torsion: bool = False) -> tuple[RunReport, str]:
    fs = enumerate_faces(n, k)
    br = reduced_homology(fs, torsion=torsion)
    rep = RunReport("betti", {"n": n, "k": k, "torsion": torsion})
    rep.outputs["betti"] = dict(br.betti)
    rep.outputs["torsion"] = None if br.torsion is None else {i: list(t) for i, t in br.torsion.items()}
    rep.outputs["wedge"] = _homotopy_text(wedge_signature(br))
    lines = []
    for i, b in sorted(br.betti.items()):
        tors = "NA" if br.torsion is None else ",".join(map(str, br.torsion.get(i, ())))
        lines.append(f"{i}\t{b}\t{tors}")
    return rep, "\n".join(lines) + "\n"


def _strategy(n: int, k: int, strategy: str, a: int | None):
    if strategy == "theorem-main":
        return build_theorem_main_matching(n, k)
    if strategy == "contractible":
        if a is None:
            raise UsageError("--a is required for --strategy=contractible")
        return build_contractible_matching(n, k, a)
    if strategy == "example":
        return build_example_matching(n, k)
    raise UsageError(f"unknown strategy {strategy!r}")


def cmd_morse(n: int, k: int, strategy: str, a: int | None = None):
    sr = _strategy(n, k, strategy, a)
    fs = sr.matching.scope
    br = reduced_homology(fs)
    rep = RunReport("morse", {"n": n, "k": k, "strategy": strategy, "a": a})
    rep.outputs["pairs"] = len(sr.matching)
    rep.outputs["morse_vector"] = sr.morse_vector.as_list()
    rep.outputs["critical"] = [_face_str(c) for c in sr.critical]
    rep.outputs["homotopy_summary"] = sr.homotopy_summary
    rep.outputs["betti"] = dict(br.betti)
    rep.outputs["max_critical_dim"] = max(len(c) - 1 for c in sr.critical)
    rep.checks["acyclic"] = sr.acyclic
    rep.checks["counting"] = len(fs) - 1 == 2 * len(sr.matching) + len(sr.critical)
    rep.checks["euler"] = sr.morse_vector.euler == euler_characteristic(fs)
    rep.checks["morse_inequalities"] = morse_inequalities_check(sr.morse_vector, br)
    if strategy == "theorem-main":
        rep.outputs["r_of_k"] = r_of_k(k)
        rep.checks["dimension_bound"] = rep.outputs["max_critical_dim"] <= r_of_k(k)
    return rep, sr


def cmd_verify(n: int, k: int, text: str) -> tuple[int, str]:
    """Return ``(exit code, diagnostic)`` for a serialized matching."""
    fs = enumerate_faces(n, k)
    try:
        m, listed = load_matching(text)
    except MatchingParseError as exc:
        return 2, f"parse error: {exc}"
    try:
        check_structure(fs, m)
    except (StructuralError, DomainError) as exc:
        return 1, f"invalid matching: {exc}"
    cycle = find_cycle(m)
    if cycle is not None:
        return 1, "cycle: " + " -> ".join(_face_str(f) for f in cycle)
    crit = critical_cells(fs, m)
    if listed is not None and sorted(listed, key=lambda f: (len(f), f)) != crit:
        return 1, "critical list mismatch: file lists {} cells, matching leaves {}".format(
            len(listed), len(crit))
    return 0, f"ok: {len(m)} pairs, {len(crit)} critical"


def cmd_mobius(k: int) -> RunReport:
    rep = RunReport("mobius", {"k": k})
    mu = mobius(k)
    via = mobius_via_gamma(k)
    rep.outputs["mobius"] = mu
    rep.outputs["gamma_signed_sum"] = via
    rep.outputs["critical_cell"] = _face_str(squarefree_critical_cell(k)) if is_squarefree(k) else None
    rep.checks["identity"] = mu == via
    return rep


def cmd_bounds(a: int | None = None, k: int | None = None) -> RunReport:
    if (a is None) == (k is None):
        raise UsageError("give exactly one of --a or --k")
    if a is not None:
        cert = bound_certificate(a)
        rep = RunReport("bounds", {"a": a})
        rep.outputs.update(
            L=cert.L,
            factorization={p: e for p, e in cert.factorization.items()},
            M=cert.M,
            threshold=str(cert.threshold),
            applies_to=f"k >= {cert.threshold} and k < n <= {a + 1}*k",
        )
        rep.checks["certificate"] = not cert.check()
        return rep
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    r = r_of_k(k)
    rep = RunReport("bounds", {"k": k})
    rep.outputs.update(
        r=r,
        primorial_lower=primorial_of_nth_prime(r - 1),
        primorial_upper=primorial_of_nth_prime(r),
        asymptotic_ratio=asymptotic_ratio(k) if k >= 3 else None,
    )
    rep.checks["bracket"] = primorial_of_nth_prime(r - 1) <= k < primorial_of_nth_prime(r)
    return rep


def table_row(k: int) -> dict[str, Any]:
    n = 5 * k
    fs = enumerate_faces(n, k)
    br = reduced_homology(fs)
    oracle = _homotopy_text(wedge_signature(br))
    if k == 1:
        sr = build_theorem_main_matching(n, k, fs)
    elif k <= 5:
        sr = build_example_matching(n, k, fs)
    else:
        a = contractible_by_theorem(n, k)
        if a is None:
            sr = build_theorem_main_matching(n, k, fs)
        else:
            sr = build_contractible_matching(n, k, a, fs)
    mv = sr.morse_vector
    morse = None
    if sr.homotopy_summary == "contractible":
        morse = "contractible"
    elif sr.homotopy_summary:
        (i, c), = ((i, c) for i, c in mv.c.items() if i > 0)
        morse = f"(S^{i})^v{c}"
    return {
        "k": k,
        "n": n,
        "strategy": sr.strategy,
        "a": sr.a,
        "oracle": oracle,
        "morse": morse,
        "agree": sr.acyclic and morse is not None and morse == oracle,
    }


def cmd_table(max_k: int, force: bool = False) -> tuple[RunReport, str]:
    if max_k < 1:
        raise UsageError("--max-k must be >= 1")
    if max_k > TABLE_MAX_K and not force:
        raise UsageError(f"--max-k above {TABLE_MAX_K} needs --force")
    rows = [table_row(k) for k in range(1, max_k + 1)]
    rep = RunReport("table", {"max_k": max_k})
    rep.outputs["rows"] = {r["k"]: r["oracle"] for r in rows}
    for r in rows:
        rep.checks[f"k={r['k']}"] = r["agree"]
    head = "k\tn\thomotopy\tmorse\tstrategy\tagree"
    body = []
    for r in rows:
        label = r["strategy"] if r["a"] is None else f"{r['strategy']}(a={r['a']})"
        body.append("\t".join([str(r["k"]), str(r["n"]), _cell(r["oracle"]),
                               _cell(r["morse"]), label, _cell(r["agree"])]))
    return rep, "\n".join([head, *body]) + "\n"


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of TSV")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    p = argparse.ArgumentParser(prog="vdw", description="van der Waerden complexes")
    sub = p.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", parents=[common], help="face counts of vdW(N, K)")
    b.add_argument("n", type=_positive)
    b.add_argument("k", type=_positive)
    b.add_argument("--faces", action="store_true", help="also list every non-empty face")

    h = sub.add_parser("betti", parents=[common], help="reduced integral homology")
    h.add_argument("n", type=_positive)
    h.add_argument("k", type=_positive)
    h.add_argument("--torsion", action="store_true")

    m = sub.add_parser("morse", parents=[common], help="build and check a Morse matching")
    m.add_argument("n", type=_positive)
    m.add_argument("k", type=_positive)
    m.add_argument("--strategy", required=True, choices=["theorem-main", "contractible", "example"])
    m.add_argument("--a", type=_positive)
    m.add_argument("--save-matching", metavar="FILE", help="write the matching in verify format")

    v = sub.add_parser("verify", parents=[common], help="check a serialized matching")
    v.add_argument("n", type=_positive)
    v.add_argument("k", type=_positive)
    v.add_argument("file")

    mu = sub.add_parser("mobius", parents=[common], help="Moebius value via Gamma(K)")
    mu.add_argument("k", type=_positive)

    bd = sub.add_parser("bounds", parents=[common], help="L(a)/M(a) certificate or r(k)")
    bd.add_argument("--a", type=int)
    bd.add_argument("--k", type=int)

    t = sub.add_parser("table", parents=[common], help="homotopy types of vdW(5k, k)")
    t.add_argument("--max-k", type=_positive, default=7)
    t.add_argument("--force", action="store_true")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (UsageError, DomainError, PreconditionError) as exc:
        print(f"vdw {args.cmd}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"vdw {args.cmd}: {exc.strerror}: {exc.filename}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"vdw {args.cmd}: invariant violated: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.cmd == "verify":
        with open(args.file) as fh:
            code, msg = cmd_verify(args.n, args.k, fh.read())
        if args.json:
            msg = json.dumps({"exit": code, "message": msg}, sort_keys=True)
        _emit(msg + "\n", args.out)
        return code

    text = None
    if args.cmd == "build":
        rep = cmd_build(args.n, args.k, args.faces)
    elif args.cmd == "betti":
        rep, text = cmd_betti(args.n, args.k, args.torsion)
    elif args.cmd == "morse":
        rep, sr = cmd_morse(args.n, args.k, args.strategy, args.a)
        if args.save_matching:
            with open(args.save_matching, "w") as fh:
                fh.write(dump_matching(sr.matching, sr.critical))
    elif args.cmd == "mobius":
        rep = cmd_mobius(args.k)
    elif args.cmd == "bounds":
        rep = cmd_bounds(args.a, args.k)
    else:
        rep, text = cmd_table(args.max_k, args.force)

    if args.json:
        _emit(rep.to_json(), args.out)
    else:
        _emit(text if text is not None else rep.to_tsv(), args.out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
