"""Batch front end: run a session file, write a JSON report and SVG plots.

Usage::

    python -m kbasis --session alt.kb --out report.json --svg plots/

Every exact number in the report is a string such as ``"-1/190"``;
polynomials carry their text form plus a term list, both of which parse
back to the same value.  Output is deterministic for a given session and
flags, and the exit code is 0 iff every command succeeded.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .groebner import GroebnerBasis, Ideal, buchberger, kernel_of_map, normal_form
from .hull import Polytope, volume
from .khovanskii import (build_mu_context, default_degree_bound, khovanskii_certificate,
                         lattice_K, lattice_K_from_valuation, mu, mu_of_variable,
                         phi_transformation)
from .linalg import RatMatrix
from .okounkov import (CertificateRefutedError, affine_equivalence, algorithm1_volume,
                       direct_normalized_volume, extend_graded, nobody_direct,
                       random_orthogonal_extension)
from .orders import (MonomialOrder, ValuationTable, ValueOrder, WeightOrder, grevlex, grlex, lex,
                     valuation_induced_order)
from .polyring import ParseError, Polynomial, PolynomialRing, format_monomial, format_polynomial
from .sagbi import (QuotientElement, minimality_reduce, standard_variable_set, subduction,
                    subduction_quotient)
from .session import (Command, GradingDecl, IdealDecl, OrderDecl, PolyDecl, RingDecl, Session,
                      ValuationDecl, parse_session)

BUILTIN = {"lex": lex, "grlex": grlex, "grevlex": grevlex}
DEFAULT_TIEBREAK = "grevlex"
DEFAULT_KERNEL_ORDER = "grevlex"


# ---------------------------------------------------------------------------
# JSON encoding of exact values

def frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector_json(v) -> list[str]:
    return [frac(x) for x in v]


def matrix_json(m: RatMatrix) -> list[list[str]]:
    return [vector_json(r) for r in m.rows()]


def poly_json(f: Polynomial, order: MonomialOrder = grevlex) -> dict:
    names = f.ring.variables
    return {
        "text": format_polynomial(f, order),
        "terms": [[frac(c), format_monomial(e, names) or "1"] for e, c in f.sorted_terms(order)],
    }


def monomial_json(exp, ring: PolynomialRing) -> str:
    return format_monomial(exp, ring.variables) or "1"


# ---------------------------------------------------------------------------
# evaluation environment

class CommandError(Exception):
    pass


@dataclass
class Environment:
    rings: dict = field(default_factory=dict)
    orders: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    valuations: dict = field(default_factory=dict)
    gradings: dict = field(default_factory=dict)
    gbs: dict = field(default_factory=dict)
    gb_ideals: dict = field(default_factory=dict)

    def order(self, name: str) -> MonomialOrder:
        return self.orders[name] if name in self.orders else BUILTIN[name]


@dataclass
class RunOptions:
    degree_bound: int | None = None
    seed: int = 0
    svg_dir: Path | None = None


def _declare(env: Environment, stmt) -> None:
    if isinstance(stmt, RingDecl):
        env.rings[stmt.name] = PolynomialRing(stmt.variables)
    elif isinstance(stmt, OrderDecl):
        if stmt.kind in BUILTIN:
            env.orders[stmt.name] = BUILTIN[stmt.kind]
        elif stmt.kind == "weight":
            env.orders[stmt.name] = WeightOrder(RatMatrix.from_rows(stmt.matrix.rows),
                                                env.order(stmt.tiebreak))
        else:
            table = env.valuations[stmt.valuation]
            if table.degrees is not None:
                table = extend_graded(table).table
            env.orders[stmt.name] = valuation_induced_order(table, env.order(stmt.tiebreak))
    elif isinstance(stmt, PolyDecl):
        env.polys[stmt.name] = stmt.poly
    elif isinstance(stmt, IdealDecl):
        gens = tuple(env.polys[n] for n in stmt.members)
        env.ideals[stmt.name] = Ideal(gens[0].ring, gens)
    elif isinstance(stmt, ValuationDecl):
        degrees = None
        if stmt.degrees is not None:
            degrees = tuple(_int(x, "degree") for x in stmt.degrees.entries)
        env.valuations[stmt.name] = ValuationTable(
            RatMatrix.from_rows(stmt.matrix.rows), ValueOrder(RatMatrix.from_rows(stmt.valueorder.rows)),
            degrees)
    elif isinstance(stmt, GradingDecl):
        env.gradings[stmt.name] = tuple(_int(x, "degree") for x in stmt.degrees.entries)


def _int(x: Fraction, what: str) -> int:
    if Fraction(x).denominator != 1:
        raise CommandError(f"{what} must be an integer, got {frac(x)}")
    return int(x)


# ---------------------------------------------------------------------------
# commands

def _degrees(env: Environment, cmd: Command, table: ValuationTable | None):
    g = cmd.option("grading")
    if g is not None:
        return env.gradings[g.value]
    if table is not None and table.degrees is not None:
        return table.degrees
    return None


def _bound(cmd: Command, opts: RunOptions, G: GroebnerBasis | None) -> tuple[int, str]:
    b = cmd.option("bound")
    if b is not None:
        return _int(b.value, "bound"), "option"
    if opts.degree_bound is not None:
        return opts.degree_bound, "flag"
    if G is None:
        raise CommandError("a degree bound is required (bound=N or --degree-bound)")
    return default_degree_bound(G), "default: max(2 * max GB degree, 2)"


def _certificate_json(cert, ring: PolynomialRing, order) -> dict:
    w = cert.witness
    if isinstance(w, Polynomial):
        witness = poly_json(w, order)
    elif isinstance(w, tuple) and len(w) == 2 and all(isinstance(e, tuple) for e in w):
        witness = [monomial_json(e, ring) for e in w]
    else:
        witness = None
    return {
        "verdict": cert.verdict,
        "attained_twice_ok": cert.attained_twice_ok,
        "standard_vars_complete": cert.standard_vars_complete,
        "leaves_ok_up_to": cert.leaves_ok_up_to,
        "degree_bound": cert.degree_bound,
        "witness": witness,
    }


def _polytope_json(p: Polytope) -> dict:
    return {"ambient_dim": p.ambient_dim, "dim": p.dim,
            "vertices": [vector_json(v) for v in p.vertices]}


def _cmd_groebner(env, cmd, opts):
    ideal = env.ideals[cmd.args[0].value]
    order = env.order(cmd.args[1].value)
    G = buchberger(ideal, order)
    if cmd.bind:
        env.gbs[cmd.bind] = G
        env.gb_ideals[cmd.bind] = ideal
    return {"order": str(order), "size": len(G),
            "basis": [poly_json(g, order) for g in G.elements],
            "lead_monomials": [monomial_json(e, G.ring) for e in G.lead_monomials]}


def _cmd_kernel(env, cmd, opts):
    source = env.rings[cmd.args[0].value]
    targets = [env.polys[n] for n in cmd.args[1].names]
    o = cmd.option("order")
    order = env.order(o.value) if o is not None else BUILTIN[DEFAULT_KERNEL_ORDER]
    I = kernel_of_map(targets, source, order)
    if cmd.bind:
        env.ideals[cmd.bind] = I
    return {"order": str(order), "generators": [poly_json(g, order) for g in I.generators],
            "defaults": {"order": DEFAULT_KERNEL_ORDER} if o is None else {}}


def _cmd_normalform(env, cmd, opts):
    f = env.polys[cmd.args[0].value]
    G = env.gbs[cmd.args[1].value]
    return {"normal_form": poly_json(normal_form(f, G), G.order)}


def _expansion_json(res) -> list:
    return [{"alpha": list(alpha), "coeff": frac(c)} for alpha, c in sorted(res.expansion.items())]


def _cmd_subduct(env, cmd, opts):
    f = env.polys[cmd.args[0].value]
    basis = [env.polys[n] for n in cmd.args[1].names]
    target = cmd.args[2].value
    if target in env.gbs:
        G = env.gbs[target]
        res = subduction_quotient(QuotientElement.of(f, G), [QuotientElement.of(b, G) for b in basis])
        order = G.order
    else:
        order = env.order(target)
        res = subduction(f, basis, order)
    out = {"expansion": _expansion_json(res), "remainder": poly_json(res.remainder, order),
           "in_subalgebra": res.remainder.is_zero()}
    if res.ideal_part is not None:
        out["ideal_part"] = poly_json(res.ideal_part, order)
    return out


def _cmd_sagbi_vars(env, cmd, opts):
    name = cmd.args[0].value
    G = env.gbs[name]
    names = G.ring.variables
    std = sorted(standard_variable_set(G))
    out = {"standard_variables": [names[i] for i in std], "complete": len(std) == len(names)}
    if len(cmd.args) > 1:
        table = env.valuations[cmd.args[1].value]
        if table.degrees is not None:
            table = extend_graded(table).table
        ideal = env.gb_ideals.get(name)
        if ideal is None:
            raise CommandError(f"{name} has no recorded ideal for minimality reduction")
        kept, dropped = minimality_reduce(ideal, table)
        out["minimal"] = [names[i] for i in kept]
        out["dropped"] = [names[i] for i in dropped]
        out["defaults"] = {"tiebreak": DEFAULT_TIEBREAK}
    return out


def _cmd_toric_lattice(env, cmd, opts):
    name = cmd.args[0].value
    if name in env.gbs:
        K = lattice_K(env.gbs[name])
        src = "groebner"
        extra = {}
    else:
        bound, how = _bound(cmd, opts, None)
        K = lattice_K_from_valuation(env.valuations[name], bound)
        src = "valuation"
        extra = {"degree_bound": bound, "degree_bound_source": how}
    return {"source": src, "rank": K.rank, "ambient_dim": K.ambient_dim,
            "generators": [vector_json(v) for v in K.generators()],
            "covolume": frac(K.covolume()) if K.rank == K.ambient_dim else None, **extra}


def _cmd_mu(env, cmd, opts):
    G = env.gbs[cmd.args[0].value]
    d = _degrees(env, cmd, None)
    ctx = build_mu_context(G, d)
    names = G.ring.variables
    out = {"ell": ctx.ell, "W": matrix_json(ctx.W),
           "variables": {names[i]: vector_json(mu_of_variable(i, ctx).coords) for i in range(len(names))}}
    p = cmd.option("polys")
    if p is not None:
        out["polys"] = {n: vector_json(mu(QuotientElement.of(env.polys[n], G), ctx).coords) for n in p.names}
    return out


def _cmd_certificate(env, cmd, opts):
    G = env.gbs[cmd.args[0].value]
    table = env.valuations[cmd.args[1].value]
    d = _degrees(env, cmd, table)
    bound, how = _bound(cmd, opts, G)
    cert = khovanskii_certificate(G, table, build_mu_context(G, d), bound)
    return {**_certificate_json(cert, G.ring, G.order), "degree_bound_source": how}


def _svg(opts: RunOptions, cmd: Command, p: Polytope) -> str | None:
    if opts.svg_dir is None or p.ambient_dim != 2:
        return None
    opts.svg_dir.mkdir(parents=True, exist_ok=True)
    path = opts.svg_dir / f"line{cmd.line:03d}_{cmd.name}.svg"
    emit_svg(p, path)
    return str(path)


def _cmd_nobody_direct(env, cmd, opts):
    table = env.valuations[cmd.args[0].value]
    d = _degrees(env, cmd, table)
    if d is None:
        raise CommandError("degrees are required (valuation degrees or grading=NAME)")
    body = nobody_direct(table, d)
    out = {"body": _polytope_json(body), "euclidean_volume": frac(volume(body)),
           "normalized_volume": frac(direct_normalized_volume(table, d))}
    svg = _svg(opts, cmd, body)
    if svg:
        out["svg"] = svg
    return out


def _alg1(env, cmd, opts):
    first = cmd.args[0].value
    G = env.gbs.get(first)
    table = env.valuations[first] if G is None else (
        env.valuations[cmd.args[1].value] if len(cmd.args) > 1 else None)
    d = _degrees(env, cmd, table)
    if d is None:
        raise CommandError("degrees are required (valuation degrees or grading=NAME)")
    kw = {}
    W = cmd.option("W")
    kb = cmd.option("kbasis")
    ext = cmd.option("extension")
    if W is not None:
        Wm = RatMatrix.from_rows(W.rows)
        ell = cmd.option("ell")
        if ell is None and kb is None and G is None:
            raise CommandError("with W=... give ell=N (size of the K block) or kbasis=...")
        kw["W"] = Wm
        if kb is None and G is None:
            kw["k_basis"] = Wm.columns()[:_int(ell.value, "ell")]
    if kb is not None:
        kw["k_basis"] = [tuple(r) for r in kb.rows]
    if ext is not None:
        kw["extension"] = [tuple(_int(x, "extension entry") for x in r) for r in ext.rows]
    bound = None
    how = None
    if G is not None:
        bound, how = _bound(cmd, opts, G)
    report = algorithm1_volume(G, table, d, degree_bound=bound, **kw)
    return G, table, d, report, how, kw


def _alg1_json(G, report, how) -> dict:
    out = {
        "m": report.m, "ell": report.ell,
        "W": matrix_json(report.W), "V": matrix_json(report.V), "L_prime": matrix_json(report.L_prime),
        "euclidean_volume": frac(report.euclidean_volume),
        "lattice_det": frac(report.lattice_det),
        "degree_gcd": report.degree_gcd, "degree_norm_sq": report.degree_norm_sq,
        "factorial": report.factorial_term,
        "normalized_volume": frac(report.normalized_volume),
        "body": _polytope_json(report.body),
        "degenerate": report.degenerate, "notes": list(report.notes),
    }
    if report.certificate is not None:
        out["certificate"] = _certificate_json(report.certificate, G.ring, G.order)
        out["degree_bound_source"] = how
    return out


def _cmd_nobody_alg1(env, cmd, opts):
    G, table, d, report, how, kw = _alg1(env, cmd, opts)
    out = _alg1_json(G, report, how)
    trials = cmd.option("trials")
    if trials is not None:
        n = _int(trials.value, "trials")
        rng = random.Random(opts.seed)
        K = report.context.K
        vols = []
        for _ in range(n):
            ext = random_orthogonal_extension(K, d, rng)
            r = algorithm1_volume(None, table, d, k_basis=K, extension=ext)
            vols.append({"extension": [[str(x) for x in v] for v in ext],
                         "normalized_volume": frac(r.normalized_volume)})
        out["invariance"] = {"seed": opts.seed, "trials": vols,
                             "all_equal": all(v["normalized_volume"] == out["normalized_volume"] for v in vols)}
    svg = _svg(opts, cmd, report.body)
    if svg:
        out["svg"] = svg
    return out


def _cmd_affine_check(env, cmd, opts):
    G, table, d, report, how, kw = _alg1(env, cmd, opts)
    graded = extend_graded(table, d)
    phi, rep = phi_transformation(graded.table, report.context)
    direct = nobody_direct(table, d)
    out = {"phi": matrix_json(phi), "phi_consistent": rep.consistent,
           "alg1_normalized_volume": frac(report.normalized_volume),
           "direct_normalized_volume": frac(direct_normalized_volume(table, d))}
    if not rep.consistent:
        out.update(passed=False, reason=f"phi inconsistent on generators {rep.mismatches}")
        return out
    check = affine_equivalence(report.body, direct, phi, 0)
    out["passed"] = check.passed
    out["reason"] = check.reason
    if check.M is not None:
        out["M"] = matrix_json(check.M)
        out["b"] = vector_json(check.b)
    out["volumes_agree"] = out["alg1_normalized_volume"] == out["direct_normalized_volume"]
    return out


HANDLERS = {
    "groebner": _cmd_groebner, "kernel": _cmd_kernel, "normalform": _cmd_normalform,
    "subduct": _cmd_subduct, "sagbi-vars": _cmd_sagbi_vars, "toric-lattice": _cmd_toric_lattice,
    "mu": _cmd_mu, "certificate": _cmd_certificate, "nobody-direct": _cmd_nobody_direct,
    "nobody-alg1": _cmd_nobody_alg1, "affine-check": _cmd_affine_check,
}


def run(session: Session, command: Command, env: Environment | None = None,
        options: RunOptions | None = None) -> dict:
    """Execute one command; returns its report dictionary.

    Declarations before the command must already be in ``env`` (see
    :func:`run_session`); a fresh environment is built from the whole
    session when none is given.
    """
    opts = options or RunOptions()
    if env is None:
        env = Environment()
        for stmt in session.statements:
            if stmt is command:
                break
            if isinstance(stmt, Command):
                _execute(env, stmt, opts)
            else:
                _declare(env, stmt)
    return _execute(env, command, opts)


def _execute(env: Environment, cmd: Command, opts: RunOptions) -> dict:
    report = {"command": str(cmd), "line": cmd.line, "status": "ok"}
    try:
        report["result"] = HANDLERS[cmd.name](env, cmd, opts)
    except CertificateRefutedError as e:
        report["status"] = "error"
        report["error"] = {"type": "CertificateRefuted", "message": f"{cmd.name} (line {cmd.line}): {e}"}
        cert = e.certificate
        gb = env.gbs.get(cmd.args[0].value)
        if gb is not None:
            report["error"]["certificate"] = _certificate_json(cert, gb.ring, gb.order)
    except (ValueError, ArithmeticError, LookupError, CommandError, RuntimeError) as e:
        report["status"] = "error"
        report["error"] = {"type": type(e).__name__, "message": f"{cmd.name} (line {cmd.line}): {e}"}
    return report


def run_session(session: Session, options: RunOptions | None = None) -> dict:
    opts = options or RunOptions()
    env = Environment()
    reports = []
    for stmt in session.statements:
        if isinstance(stmt, Command):
            reports.append(_execute(env, stmt, opts))
        else:
            _declare(env, stmt)
    return {
        "ok": all(r["status"] == "ok" for r in reports),
        "defaults": {"degree_bound": opts.degree_bound if opts.degree_bound is not None
                     else "max(2 * max GB degree, 2)",
                     "tiebreak": DEFAULT_TIEBREAK, "kernel_order": DEFAULT_KERNEL_ORDER,
                     "seed": opts.seed},
        "reports": reports,
    }


# ---------------------------------------------------------------------------
# SVG

def _label(v) -> str:
    return "(" + ", ".join(frac(x) for x in v) + ")"


def emit_svg(p: Polytope, path, size: int = 400, margin: int = 60) -> Path:
    """Standalone SVG of a 2-D polytope with lattice points and vertex labels."""
    if p.ambient_dim != 2:
        raise ValueError(f"SVG output needs a 2-dimensional polytope, got dimension {p.ambient_dim}")
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
    y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    if x1 == x0:
        x1 += 1
    if y1 == y0:
        y1 += 1
    scale = Fraction(size, max(x1 - x0, y1 - y0))

    def px(v):
        return (float(margin + (v[0] - x0) * scale), float(margin + (y1 - v[1]) * scale))

    w = float(2 * margin + (x1 - x0) * scale)
    h = float(2 * margin + (y1 - y0) * scale)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
           f'viewBox="0 0 {w:.2f} {h:.2f}">',
           '<rect width="100%" height="100%" fill="white"/>']
    pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in map(px, p.vertices))
    if len(p.vertices) >= 3:
        out.append(f'<polygon points="{pts}" fill="#fff2a8" stroke="#1f3fbf" stroke-width="2"/>')
    else:
        out.append(f'<polyline points="{pts}" fill="none" stroke="#1f3fbf" stroke-width="2"/>')
    for i in range(x0, x1 + 1):
        for j in range(y0, y1 + 1):
            a, b = px((i, j))
            out.append(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="2.5" fill="#cc2222"/>')
    for v in p.vertices:
        a, b = px(v)
        out.append(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="4" fill="#7a1010"/>')
        out.append(f'<text x="{a + 6:.3f}" y="{b - 6:.3f}" font-family="sans-serif" '
                   f'font-size="12">{_label(v)}</text>')
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# entry point

def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="kbasis", description="Run a Khovanskii-basis session file.")
    ap.add_argument("--session", required=True, help="session file to run")
    ap.add_argument("--out", help="write the JSON report here (default: stdout)")
    ap.add_argument("--svg", help="directory for SVG plots of 2-D bodies")
    ap.add_argument("--degree-bound", type=int, help="degree bound for certificates and lattices")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized invariance trials")
    args = ap.parse_args(argv)
    try:
        text = Path(args.session).read_text(encoding="utf-8")
        session = parse_session(text)
    except ParseError as e:
        print(f"{args.session}:{e.line}:{e.column}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"{args.session}: {e}", file=sys.stderr)
        return 2
    opts = RunOptions(args.degree_bound, args.seed, Path(args.svg) if args.svg else None)
    result = {"session": args.session, **run_session(session, opts)}
    text = json.dumps(result, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for r in result["reports"]:
        if r["status"] != "ok":
            print(r["error"]["message"], file=sys.stderr)
    return 0 if result["ok"] else 1
