"""Command-line front end: ``rhtkit <command> [input] [options]``.

Exit status: 0 when every verdict passes, 1 when a mathematical check fails,
2 on input or usage errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .extension import (ExtensionError, HolonomyError, LambdaExtension, acyclic_closure,
                        dual_exponential_action, holonomy_residual_ok, eq16_check, holonomy, ul_dual_check)
from .gca import Element
from .group import (SeriesElement, TruncationError as GroupTruncation, ULTruncation, group_element,
                    group_mul, group_pow, lazard_check, nth_root, pi_of_morphism, series_action, whitehead)
from .lie import (GradedLieAlgebra, LieError, cce_dual, cce_roundtrip, check_jacobi, check_lcs_grading,
                  homotopy_lie_algebra, hurewicz, lcs, prop6_check)
from .models import CdgaError, CdgaPresentation, builtin, minimal_model
from .sullivan import (LambdaAlgebra, SullivanAlgebra, SullivanError, SullivanMorphism, TruncationError,
                       cohomology, is_minimal, sullivan_filtration, validate, vn_filtration_bracketed)
from .textformat import InputDocument, ParseError, format_expr, parse, parse_expr, to_text

COMMANDS = ("validate", "cohomology", "model", "pi", "lie", "lcs", "prop6", "hurewicz", "cce", "roundtrip",
            "exp", "mul", "root", "whitehead", "lazard", "closure", "holonomy", "uldual", "eq16",
            "series-action")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class Report:
    command: str
    digest: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self, message: str) -> None:
        self.ok = False
        self.lines.append("FAIL: " + message)

    def text(self) -> str:
        head = [f"command: {self.command}", f"input-sha256: {self.digest}"]
        tail = [f"verdict: {'pass' if self.ok else 'fail'}"]
        return "\n".join(head + self.lines + tail) + "\n"

    def json(self) -> str:
        doc = {"command": self.command, "input_sha256": self.digest, "ok": self.ok, "data": self.data}
        return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _q(x) -> str:
    return str(Fraction(x))


def _matrix_rows(M) -> list[list[str]]:
    return [[_q(c) for c in row] for row in M.tolist()]


# building objects from documents ----------------------------------------------------

def _options(doc: InputDocument, args) -> tuple[int, int, int]:
    cutoff = args.cutoff if args.cutoff is not None else doc.options.get("cutoff", 10)
    W = args.word_cutoff if args.word_cutoff is not None else doc.options.get("word_cutoff", 6)
    seed = args.seed if args.seed is not None else doc.options.get("seed", 0)
    return cutoff, W, seed


def _terms(terms) -> list[tuple]:
    return [(c, f) for c, f in terms]


def build_algebra(doc: InputDocument, check: bool = True) -> LambdaAlgebra:
    """Sullivan or builtin document to an algebra."""
    if doc.kind == "builtin":
        fam, params = doc.builtin
        try:
            return builtin(fam, *params)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if doc.kind != "sullivan":
        raise UsageError(f"this command needs a sullivan or builtin document, got {doc.kind}")
    gens = [(n, d) for n, d, _ in doc.gens]
    cls = SullivanAlgebra if all(d >= 1 for _, d in gens) else LambdaAlgebra
    return cls.from_terms(gens, {n: _terms(t) for n, t, _ in doc.diffs}, check=check)


def build_lie(doc: InputDocument) -> GradedLieAlgebra:
    if doc.kind != "lie":
        return homotopy_lie_algebra(build_algebra(doc))
    basis = [(n, d) for n, d, _ in doc.gens]
    return GradedLieAlgebra(basis, build_lie_table(doc))


def build_cdga(doc: InputDocument) -> CdgaPresentation:
    if doc.kind != "cdga":
        raise UsageError(f"this command needs a cdga document, got {doc.kind}")
    basis = [("1", 0)] + [(n, d) for n, d, _ in doc.gens]
    index = {n: i for i, (n, _) in enumerate(basis)}

    def coords(terms):
        out: dict[int, Fraction] = {}
        for c, (f,) in terms:
            out[index[f]] = out.get(index[f], Fraction(0)) + c
        return out

    mult = {}
    for (a, b), terms in doc.mults:
        i, j = index[a], index[b]
        mult[(i, j)] = coords(terms)
        if (j, i) not in mult and i != j:
            s = -1 if (basis[i][1] * basis[j][1]) % 2 else 1
            mult[(j, i)] = {k: s * c for k, c in coords(terms).items()}
    diff = {index[n]: coords(t) for n, t, _ in doc.diffs}
    return CdgaPresentation(basis, mult, diff)


def build_extension(doc: InputDocument) -> LambdaExtension:
    if doc.kind != "extension":
        raise UsageError(f"this command needs an extension document, got {doc.kind}")
    base_gens = [(n, d) for n, d, s in doc.gens if s == "base"]
    fiber_gens = [(n, d) for n, d, s in doc.gens if s == "fiber"]
    base_d = {n: _terms(t) for n, t, s in doc.diffs if s == "base"}
    cls = SullivanAlgebra if all(d >= 1 for _, d in base_gens) else LambdaAlgebra
    base = cls.from_terms(base_gens, base_d, name="base")
    fiber_d = {n: _terms(t) for n, t, s in doc.diffs if s == "fiber"}
    return LambdaExtension.from_terms(base, fiber_gens, fiber_d)


def _algebra_doc(alg: LambdaAlgebra, kind: str = "sullivan") -> InputDocument:
    """Document describing an algebra, for printing results in the input format."""
    doc = InputDocument(kind=kind)
    sp = alg.space
    for g in sp:
        doc.gens.append((g.name, g.degree, None))
    for i, g in enumerate(sp):
        e = alg.d.on_generator(i)
        if e.terms:
            doc.diffs.append((g.name, _element_terms(e), None))
    return doc


def _element_terms(e: Element) -> list[tuple]:
    sp = e.space
    return [(c, tuple(sp.generators[g].name for g in m)) for m, c in e.sorted_terms()]


def _lie_vector(L: GradedLieAlgebra, text: str, what: str) -> tuple:
    try:
        terms = parse_expr(text)
    except ParseError as exc:
        raise UsageError(f"{what}: {exc}") from None
    v = [Fraction(0)] * L.dim
    for c, factors in terms:
        if len(factors) != 1:
            raise UsageError(f"{what} must be a linear combination of Lie basis elements")
        try:
            v[L.index(factors[0])] += c
        except (KeyError, ValueError):
            raise UsageError(f"{what}: unknown basis element {factors[0]!r}; known: {', '.join(L.names)}") from None
    return tuple(v)


# commands ----------------------------------------------------------------------------

def cmd_validate(doc, args, rep: Report) -> None:
    if doc.kind in ("sullivan", "builtin"):
        alg = build_algebra(doc, check=False)
        v = validate(alg)
        rep.data["valid"] = v.ok
        if not v.ok:
            rep.data["witness"] = v.witness
            rep.fail(f"{v.message} (witness: {v.witness})")
            return
        filt = sullivan_filtration(alg)
        rep.add(f"generators: {len(alg.space)}")
        rep.add(f"filtration dims: {filt.dims()}")
        rep.add(f"minimal: {'yes' if is_minimal(alg) else 'no'}")
        rep.data.update(filtration=filt.dims(), minimal=is_minimal(alg))
    elif doc.kind == "lie":
        basis = [(n, d) for n, d, _ in doc.gens]
        L = GradedLieAlgebra(basis, build_lie_table(doc), check=False)
        j = check_jacobi(L)
        rep.data["jacobi"] = j.ok
        if not j.ok:
            rep.fail(j.message)
            return
        rep.add(f"dimension: {L.dim}")
        rep.add("jacobi: ok")
    elif doc.kind == "cdga":
        A = build_cdga(doc)
        rep.add(f"dimension: {len(A.names)}")
        rep.add("cdga axioms: ok")
    else:
        ext = build_extension(doc)
        rep.add(f"staging dims: {[t.dim for t in ext.staging]}")
        rep.add(f"product: {'yes' if ext.is_product() else 'no'}")
        rep.data.update(staging=[t.dim for t in ext.staging], product=ext.is_product())


def build_lie_table(doc: InputDocument) -> dict:
    index = {n: i for i, (n, _, _) in enumerate(doc.gens)}
    table = {}
    for (a, b), terms in doc.brackets:
        coords: dict[int, Fraction] = {}
        for c, (f,) in terms:
            coords[index[f]] = coords.get(index[f], Fraction(0)) + c
        table[(index[a], index[b])] = coords
    return table


def cmd_cohomology(doc, args, rep: Report) -> None:
    cutoff, _, _ = _options(doc, args)
    top = args.max if args.max is not None else cutoff
    dims = []
    if doc.kind == "cdga":
        A = build_cdga(doc)
        for n in range(top + 1):
            reps, _ = A.cohomology(n)
            dims.append(len(reps))
            if reps:
                rep.add(f"H^{n}: dim {len(reps)}: " + ", ".join(A.format(r) for r in reps))
    else:
        alg = build_extension(doc).total if doc.kind == "extension" else build_algebra(doc)
        for n in range(top + 1):
            h = cohomology(alg, n)
            dims.append(h.dimension)
            if h.dimension:
                rep.add(f"H^{n}: dim {h.dimension}: " + ", ".join(str(r) for r in h.representatives))
    rep.lines.insert(0, f"dims (degrees 0..{top}): {dims}")
    rep.data["dims"] = dims


def cmd_model(doc, args, rep: Report) -> None:
    cutoff, _, _ = _options(doc, args)
    A = build_cdga(doc)
    M, wit = minimal_model(A, cutoff)
    rep.add(f"minimal model through degree {cutoff}:")
    rep.lines.extend("  " + line for line in to_text(_algebra_doc(M)).splitlines()[1:])
    for n, ds, dt, ok in wit.per_degree:
        rep.add(f"H^{n}: model {ds}, algebra {dt}, induced iso {'yes' if ok else 'no'}")
    rep.data.update(generators=[[g.name, g.degree] for g in M.space],
                    quasi_iso=[list(r) for r in wit.per_degree])
    if not wit.ok:
        rep.fail(f"not a quasi-isomorphism in degree {wit.first_failure()}")


def cmd_pi(doc, args, rep: Report) -> None:
    alg = build_algebra(doc)
    degs = alg.space.degrees()
    table = {}
    for n in sorted(set(degs)):
        table[n] = degs.count(n)
        rep.add(f"dim pi_{n} (x) Q = dim V^{n} = {table[n]}")
    rep.data["dims"] = table
    if doc.maps:
        values = {}
        for name, terms in doc.maps:
            e = Element.zero(alg.space, alg.space.degree(alg.space.index(name)))
            for c, factors in terms:
                e = e + Element.monomial(alg.space, [alg.space.index(f) for f in factors], c)
            values[name] = e
        phi = SullivanMorphism(alg, alg, values)
        M = pi_of_morphism(phi)
        rep.add("induced map on homotopy (rows and columns: " + ", ".join(alg.names) + "):")
        rep.lines.extend("  " + " ".join(row) for row in (map(str, r) for r in _matrix_rows(M)))
        rep.data["map"] = _matrix_rows(M)


def _lie_lines(L: GradedLieAlgebra) -> list[str]:
    out = ["basis: " + ", ".join(f"{n} ({d})" for n, d in zip(L.names, L.degrees))]
    for (i, j), v in sorted(L.structure_constants().items()):
        if i <= j:
            out.append(f"[{L.names[i]},{L.names[j]}] = {L.format(v)}")
    return out


def cmd_lie(doc, args, rep: Report) -> None:
    L = build_lie(doc)
    rep.lines.extend(_lie_lines(L))
    j = check_jacobi(L)
    rep.data.update(names=L.names, degrees=L.degrees,
                    brackets={f"{L.names[i]},{L.names[k]}": L.format(v)
                              for (i, k), v in sorted(L.structure_constants().items())})
    if not j.ok:
        rep.fail(j.message)


def cmd_lcs(doc, args, rep: Report) -> None:
    L = build_lie(doc)
    chain = lcs(L)
    rep.add(f"dims of L^r: {[t.dim for t in chain.terms]}")
    rep.add(f"dims of L^r/L^(r+1): {chain.quotient_dims()}")
    rep.data.update(terms=[t.dim for t in chain.terms], quotients=chain.quotient_dims())
    bad = check_lcs_grading(L, chain)
    if bad is not None:
        rep.fail(f"[L^{bad[0]}, L^{bad[1]}] is not contained in L^{bad[0] + bad[1]}")


def cmd_prop6(doc, args, rep: Report) -> None:
    alg = build_algebra(doc)
    if args.n is not None:
        ns = [args.n]
    else:
        ns = list(range(len(vn_filtration_bracketed(alg))))
    rows = []
    for n in ns:
        r = prop6_check(alg, n)
        rows.append([n, r.dim_vn, r.dim_quotient, r.annihilates, r.nonsingular])
        rep.add(f"n={n}: dim V_n = {r.dim_vn}, dim L/L^(n+2) = {r.dim_quotient}, "
                f"annihilates {'yes' if r.annihilates else 'no'}, nonsingular {'yes' if r.nonsingular else 'no'}")
        if not r.ok:
            rep.fail(f"comparison fails at n={n}")
    rep.data["rows"] = rows


def cmd_hurewicz(doc, args, rep: Report) -> None:
    alg = build_algebra(doc)
    h = hurewicz(alg)
    rep.add("columns: " + ", ".join(f"H^{d}#{i}" for d, i in h.columns))
    for name, row in zip(h.lie.names, _matrix_rows(h.matrix)):
        rep.add(f"  {name}: {' '.join(row)}")
    rep.add(f"vanishes on [L,L]: {'yes' if h.vanishes_on_L2 else 'no'}")
    rep.data.update(columns=h.columns, matrix=_matrix_rows(h.matrix), vanishes_on_L2=h.vanishes_on_L2)
    if not h.vanishes_on_L2:
        rep.fail("Hurewicz map does not vanish on [L,L]")


def cmd_cce(doc, args, rep: Report) -> None:
    L = build_lie(doc)
    alg = cce_dual(L, name="cce")
    text = to_text(_algebra_doc(alg))
    rep.lines.extend(text.splitlines())
    rep.data["document"] = text


def cmd_roundtrip(doc, args, rep: Report) -> None:
    L = build_lie(doc)
    r = cce_roundtrip(L)
    rep.add(f"roundtrip: {r.message}")
    rep.data["roundtrip"] = r.ok
    if not r.ok:
        rep.fail(r.message)


def _ul(doc, args) -> ULTruncation:
    _, W, _ = _options(doc, args)
    return ULTruncation(build_lie(doc), W)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"this command needs --{n}")


def _word_text(ul: ULTruncation, word: tuple) -> str:
    return "*".join(f"a{i + 1}" for i in word) or "1"


def cmd_exp(doc, args, rep: Report) -> None:
    _need(args, "x")
    ul = _ul(doc, args)
    L = ul.lie
    x = _lie_vector(L, args.x, "--x")
    u = ul.exp(x)
    rep.add("adapted basis: " + ", ".join(f"a{i + 1} = {L.format(ul.P.column(i))}" for i in range(L.dim)))
    parts = [f"{_q(c)}*{_word_text(ul, w)}" for w, c in sorted(u.items(), key=lambda t: (len(t[0]), t[0])) if c]
    rep.add("exp(x) = " + (" + ".join(parts) or "0"))
    back = ul.log(u)
    rep.data["exp"] = {_word_text(ul, w): _q(c) for w, c in u.items() if c}
    if tuple(back) != tuple(x):
        rep.fail(f"log(exp(x)) = {L.format(back)} differs from x")
    else:
        rep.add("log(exp(x)) = x: ok")


def cmd_mul(doc, args, rep: Report) -> None:
    _need(args, "x", "y")
    ul = _ul(doc, args)
    L = ul.lie
    g = group_element(ul, _lie_vector(L, args.x, "--x"))
    h = group_element(ul, _lie_vector(L, args.y, "--y"))
    gh = group_mul(g, h)
    rep.add(f"log(exp(x) exp(y)) = {L.format(gh.log_coords)}")
    rep.data["product"] = [_q(c) for c in gh.log_coords]


def cmd_root(doc, args, rep: Report) -> None:
    _need(args, "x", "p")
    ul = _ul(doc, args)
    L = ul.lie
    g = group_element(ul, _lie_vector(L, args.x, "--x"))
    r = nth_root(g, args.p)
    rep.add(f"root: exp({L.format(r.log_coords)})")
    rep.data["root"] = [_q(c) for c in r.log_coords]
    if group_pow(r, args.p) != g:
        rep.fail("root^p differs from g")
    else:
        rep.add("root^p = g: ok")


def cmd_whitehead(doc, args, rep: Report) -> None:
    _need(args, "x", "y")
    ul = _ul(doc, args)
    L = ul.lie
    w = whitehead(ul, _lie_vector(L, args.x, "--x"), _lie_vector(L, args.y, "--y"))
    rep.add(f"case {w.case}: {L.format(w.value)}")
    rep.data.update(case=w.case, value=[_q(c) for c in w.value])


def cmd_lazard(doc, args, rep: Report) -> None:
    ul = _ul(doc, args)
    r = lazard_check(ul)
    rep.add(f"pairs checked: {r.checked}")
    rep.data.update(checked=r.checked, ok=r.ok)
    if not r.ok:
        rs, s, a, b = r.witness
        rep.fail(f"commutator of {ul.lie.format(a)} and {ul.lie.format(b)} (filtration {rs}, {s}) "
                 "disagrees with the bracket")


def cmd_closure(doc, args, rep: Report) -> None:
    cutoff, _, _ = _options(doc, args)
    base = build_algebra(doc)
    N = args.max if args.max is not None else cutoff
    c = acyclic_closure(base, N)
    ext = c.extension
    rep.add(f"acyclic through degree {c.verified_to}")
    rep.add("fiber")
    fdoc = []
    for j, g in enumerate(ext.fiber):
        e = ext.d.on_generator(ext.nb + j)
        rep.add(f"  gen {g.name} : {g.degree}")
        rep.add(f"  d {g.name} = {format_expr(_element_terms(e))}")
        fdoc.append([g.name, g.degree, format_expr(_element_terms(e))])
    rep.data.update(verified_to=c.verified_to, fiber=fdoc)


def _holonomy_length(ext: LambdaExtension, args) -> int | None:
    return args.length if any(d == 0 for d in ext.fiber.degrees()) else None


def cmd_holonomy(doc, args, rep: Report) -> None:
    ext = build_extension(doc)
    ml = _holonomy_length(ext, args)
    hol = holonomy(ext, ml)
    top = args.max if args.max is not None else max(ext.fiber.degrees(), default=0)
    base_names = ext.base.names
    theta = {}
    for i, th in sorted(hol.theta.items()):
        for j, g in enumerate(ext.fiber):
            e = th.on_generator(j)
            if e.terms:
                rep.add(f"theta_{base_names[i]}({g.name}) = {format_expr(_element_terms(e))}")
                theta[f"{base_names[i]},{g.name}"] = format_expr(_element_terms(e))
    mats = {}
    for k in range(top + 1):
        dim = len(hol.cohomology(k)[0])
        rep.add(f"H^{k} of the fiber: dim {dim}")
        for i in sorted(hol.theta):
            M = hol.action_matrix(i, k)
            if not M.is_zero():
                rows = _matrix_rows(M)
                mats[f"{base_names[i]},{k}"] = rows
                rep.add(f"  action of x_{base_names[i]} on H^{k}: " + "; ".join(" ".join(r) for r in rows))
    rep.data.update(theta=theta, actions=mats)
    if args.alpha is not None:
        i = next((i for i, d in enumerate(ext.base.space.degrees()) if d == 1), None)
        if i is None:
            raise UsageError("--alpha needs a degree-1 base generator")
        for k in range(top + 1):
            if len(hol.cohomology(k)[0]):
                E = dual_exponential_action(hol, i, k, Fraction(args.alpha))
                rep.add(f"dual exp action on H^{k}: " + "; ".join(" ".join(r) for r in _matrix_rows(E)))
    if not holonomy_residual_ok(ext, hol, top, ml):
        rep.fail("d Phi - dbar Phi - sum v_i theta_i Phi has terms with fewer than two base factors")


def cmd_uldual(doc, args, rep: Report) -> None:
    cutoff, W, _ = _options(doc, args)
    base = build_algebra(doc)
    N = args.max if args.max is not None else min(cutoff, W - 1)
    r = ul_dual_check(base, N, W)
    for k, words, monos, ns in r.per_degree:
        rep.add(f"degree {k}: PBW words {words}, closure monomials {monos}, pairing nonsingular "
                f"{'yes' if ns else 'no'}")
    rep.data["rows"] = [list(row) for row in r.per_degree]
    if not r.ok:
        bad = next(row for row in r.per_degree if not (row[1] == row[2] and row[3]))
        rep.fail(f"duality fails in degree {bad[0]}")


def cmd_eq16(doc, args, rep: Report) -> None:
    _, _, seed = _options(doc, args)
    ext = build_extension(doc)
    r = eq16_check(ext, samples=200, seed=seed)
    rep.add(f"pairs checked: {r.pairs_checked}, functionals: {r.functionals}")
    rep.data.update(pairs=r.pairs_checked, functionals=r.functionals)
    if not r.ok:
        rep.fail(f"identity fails at {r.witness}")


def cmd_series_action(doc, args, rep: Report) -> None:
    _need(args, "alpha")
    order = args.n if args.n is not None else 10
    coeffs = [Fraction(c) for c in (args.coeffs or "1").split(",") if c.strip()]
    g = SeriesElement.of(coeffs, order)
    out = series_action(Fraction(args.alpha), g)
    rep.add(", ".join(_q(c) for c in out.coeffs))
    rep.data["coefficients"] = [_q(c) for c in out.coeffs]


HANDLERS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "model": cmd_model, "pi": cmd_pi,
    "lie": cmd_lie, "lcs": cmd_lcs, "prop6": cmd_prop6, "hurewicz": cmd_hurewicz, "cce": cmd_cce,
    "roundtrip": cmd_roundtrip, "exp": cmd_exp, "mul": cmd_mul, "root": cmd_root,
    "whitehead": cmd_whitehead, "lazard": cmd_lazard, "closure": cmd_closure, "holonomy": cmd_holonomy,
    "uldual": cmd_uldual, "eq16": cmd_eq16, "series-action": cmd_series_action,
}

NEEDS_NO_INPUT = {"series-action"}


def run(command: str, doc: InputDocument | None, args: argparse.Namespace | None = None,
        digest: str = "") -> Report:
    """Run one command on a parsed document.  Math failures are recorded in the report;
    input problems raise :class:`UsageError`, :class:`ParseError` or a truncation error."""
    if command not in HANDLERS:
        raise UsageError(f"unknown command {command!r}")
    args = args if args is not None else build_parser().parse_args([command])
    rep = Report(command, digest)
    if doc is None:
        if command not in NEEDS_NO_INPUT:
            raise UsageError(f"{command} needs an input document")
        doc = InputDocument(kind="")
    try:
        HANDLERS[command](doc, args, rep)
    except (SullivanError, LieError, CdgaError, ExtensionError, HolonomyError) as exc:
        rep.fail(str(exc))
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rhtkit", description="Exact rational computations in rational homotopy "
                                "theory at finite stage.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="input file ('-' or omitted: standard input)")
    p.add_argument("--cutoff", type=int, default=None, help="degree cutoff N (default 10)")
    p.add_argument("--word-cutoff", type=int, default=None, help="word-length cutoff W (default 6)")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks (default 0)")
    p.add_argument("--json", action="store_true", help="emit a machine-readable report")
    p.add_argument("--max", type=int, default=None, help="top degree for degree-range commands")
    p.add_argument("--n", type=int, default=None, help="filtration index (prop6) or series order")
    p.add_argument("--x", default=None, help="Lie element, e.g. 'v1 + 1/2*v3'")
    p.add_argument("--y", default=None, help="second Lie element")
    p.add_argument("--p", type=int, default=None, help="root index")
    p.add_argument("--alpha", default=None, help="rational log-coordinate of alpha")
    p.add_argument("--coeffs", default=None, help="comma-separated series coefficients")
    p.add_argument("--length", type=int, default=4, help="word-length bound for degree-0 fiber generators")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    text = ""
    try:
        if args.input is None and args.command in NEEDS_NO_INPUT:
            doc = None
        else:
            if args.input in (None, "-"):
                text = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            doc = parse(text)
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        rep = run(args.command, doc, args, digest)
    except (ParseError, UsageError, TruncationError, GroupTruncation, NotImplementedError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.json() if args.json else rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
