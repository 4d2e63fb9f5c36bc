"""FastAPI service exposing the cyclotomic sums/polylogarithms toolkit.

The CLI is a thin client over these endpoints; running `cyclo serve` (or any
ASGI server pointed at `cyclosums.service.app`) makes the same surface
available over HTTP, where the memoized polynomial, recurrence, and constant
caches amortize across requests.
"""

from __future__ import annotations

import os
from fractions import Fraction

import mpmath as mp
from fastapi import FastAPI

from .. import parsing
from ..cyclopoly import Letter, cyclotomic, factor_xn_minus_1, factor_xn_plus_1, partial_fraction_inverse, totient, moebius
from ..words import Word, lyndon_basis, shuffle, witt_count, table1
from ..sums import SumIndex, count_table2, duplicate_h1, duplicate_h2, eval_sum_definition, stuffle, synchronize, table2
from ..numerics import (DivergentValueError, eval_hpl_quadrature, nested_asymptotic_fixtures,
                        phi, phi_asymptotic, verify_ex2, hpl_value)
from ..series import eval_expansion
from ..constants import (DivergentConstantError, basis_count_w1, count_table5, eval_constant,
                         polygamma_reduce, ramanujan_values, j_sums, j_sums_direct,
                         relation_rank_w1, basis_count_w2_stuffle, sigma_value, sigma_w1_value,
                         table4_basis_row, table5, hpl_at_one, verify_sigma_rewrites)
from ..roots import distribution_check, li_root, motivic_dim, sigma11_closed, unity_root
from ..mellin import sum_to_mellin, mellin_to_sum, differentiate, UnsupportedIndexError
from .models import *

DEFAULT_PREC = int(os.environ.get("CYCLO_PREC", "30"))

app = FastAPI(title="cyclosums", version="0.1.0",
              description="Cyclotomic harmonic sums and polylogarithms")


def _ok(payload, diagnostics=()) -> CommandResult:
    return CommandResult(status="ok", payload=payload, diagnostics=list(diagnostics))


def _err(message: str) -> CommandResult:
    return CommandResult(status="error", payload=None, diagnostics=[message])


def _guard(fn):
    try:
        return fn()
    except (parsing.ParseError, ValueError, DivergentValueError,
            DivergentConstantError, UnsupportedIndexError) as exc:
        return _err(f"{type(exc).__name__}: {exc}")


def _prec(p: int) -> int:
    return p if p else DEFAULT_PREC


@app.get("/health")
def health() -> CommandResult:
    return _ok({"name": "cyclosums", "version": "0.1.0"})


@app.post("/poly/cyclotomic")
def poly_cyclotomic(req: PolyRequest) -> CommandResult:
    def run():
        p = cyclotomic(req.n)
        return _ok({"n": req.n, "coeffs": parsing.poly_json(p.coeffs), "text": str(p),
                    "degree": p.degree, "totient": totient(req.n)})
    return _guard(run)


@app.post("/poly/factor")
def poly_factor(req: FactorRequest) -> CommandResult:
    def run():
        l, sign = parsing.parse_xn_pm_1(req.expr)
        ks = factor_xn_plus_1(l) if sign == 1 else factor_xn_minus_1(l)
        return _ok({"expr": req.expr, "cyclotomic_indices": ks})
    return _guard(run)


@app.post("/poly/pfrac")
def poly_pfrac(req: PfracRequest) -> CommandResult:
    def run():
        expansion = partial_fraction_inverse(req.sign, req.l)
        terms = [{"k": lt.k, "l": lt.l, "coeff": parsing.frac_json(c)}
                 for lt, c in sorted(expansion.items())]
        return _ok({"l": req.l, "sign": req.sign, "terms": terms})
    return _guard(run)


@app.post("/words/shuffle")
def words_shuffle(req: ShuffleRequest) -> CommandResult:
    def run():
        w1, w2 = parsing.parse_word(req.w1), parsing.parse_word(req.w2)
        out = shuffle(w1, w2)
        return _ok({"terms": [{"word": str(w), "coeff": parsing.frac_json(c)}
                              for w, c in sorted(out, key=lambda t: str(t[0]))]})
    return _guard(run)


@app.post("/words/basis")
def words_basis(req: BasisRequest) -> CommandResult:
    def run():
        letters = []
        for part in req.letters.split(","):
            k, l = part.strip().split(":")
            letters.append(Letter(int(k), int(l)))
        words = lyndon_basis(letters, req.weight)
        return _ok({"count": len(words), "witt": witt_count(len(letters), req.weight),
                    "words": [str(w) for w in words]})
    return _guard(run)


@app.post("/words/count-table1")
def words_count_table1(req: CountTable1Request) -> CommandResult:
    def run():
        grid = {f"{m}x{w}": witt_count(m, w)
                for w in range(1, req.max_weight + 1)
                for m in range(2, req.max_letters + 1)}
        return _ok({"grid": grid})
    return _guard(run)


@app.post("/sums/eval")
def sums_eval(req: EvalSumRequest) -> CommandResult:
    def run():
        idx = parsing.parse_sum_index(req.index)
        v = eval_sum_definition(idx, req.n)
        return _ok({"index": str(idx), "n": req.n, "value": parsing.frac_json(v),
                    "decimal": str(float(v))})
    return _guard(run)


@app.post("/sums/stuffle")
def sums_stuffle(req: StuffleRequest) -> CommandResult:
    def run():
        s1, s2 = parsing.parse_sum_index(req.idx1), parsing.parse_sum_index(req.idx2)
        out = stuffle(s1, s2)
        return _ok({"terms": [{"index": str(t), "coeff": parsing.frac_json(c)}
                              for t, c in sorted(out, key=lambda t: str(t[0]))]})
    return _guard(run)


@app.post("/sums/sync")
def sums_sync(req: SyncRequest) -> CommandResult:
    def run():
        idx = parsing.parse_sum_index(req.index)
        out = synchronize(idx, req.k)
        return _ok({"argument_multiplier": req.k,
                    "terms": [{"index": str(t), "coeff": parsing.frac_json(c)}
                              for t, c in sorted(out, key=lambda t: str(t[0]))]})
    return _guard(run)


@app.post("/sums/dup")
def sums_dup(req: DupRequest) -> CommandResult:
    def run():
        idx = parsing.parse_sum_index(req.index)
        rel = duplicate_h1(idx) if req.variant == 1 else duplicate_h2(idx)
        enc = lambda side: [{"index": str(t), "coeff": parsing.frac_json(c)} for t, c in side]
        return _ok({"variant": req.variant, "lhs_argument": "2N",
                    "lhs": enc(rel.lhs), "rhs": enc(rel.rhs)})
    return _guard(run)


@app.post("/sums/count-table2")
def sums_count_table2(req: CountTable2Request) -> CommandResult:
    def run():
        return _ok({"rows": table2(req.max_weight)})
    return _guard(run)


@app.post("/numerics/eval-hpl")
def numerics_eval_hpl(req: EvalHplRequest) -> CommandResult:
    def run():
        w = parsing.parse_word(req.word)
        prec = _prec(req.prec)
        x = mp.mpf(req.x)
        if req.method == "series":
            v = eval_expansion(w, x, prec)
        elif req.method == "quad":
            v = eval_hpl_quadrature(w, x, prec)
        else:
            v = hpl_value(w, x, prec) if x < 1 else eval_hpl_quadrature(w, x, prec)
        return _ok({"word": str(w), "x": req.x, "value": parsing.mpf_str(v, prec)})
    return _guard(run)


@app.post("/numerics/phi")
def numerics_phi(req: PhiRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        v = phi(req.k, req.l, req.n, prec, plus=req.plus)
        return _ok({"k": req.k, "l": req.l, "n": req.n, "plus": req.plus,
                    "value": parsing.mpf_str(v, prec)})
    return _guard(run)


@app.post("/numerics/phi-asym")
def numerics_phi_asym(req: PhiAsymRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        v = phi_asymptotic(req.k, req.l, req.n, req.order, prec)
        return _ok({"k": req.k, "l": req.l, "n": req.n, "order": req.order,
                    "value": parsing.mpf_str(v, prec)})
    return _guard(run)


@app.post("/numerics/verify-ex2")
def numerics_verify_ex2(req: VerifyEx2Request) -> CommandResult:
    def run():
        results = {n: verify_ex2(n, req.prec, req.tol) for n in range(1, req.n_max + 1)}
        ok = all(results.values())
        return _ok({"results": {str(k): v for k, v in results.items()}, "all_ok": ok})
    return _guard(run)


@app.post("/mellin/to-mellin")
def mellin_forward(req: MellinRequest) -> CommandResult:
    def run():
        idx = parsing.parse_sum_index(req.index)
        me = sum_to_mellin(idx)
        return _ok({"index": str(idx), "terms": [t.integrand_desc() for t in me.terms],
                    "n_terms": len(me.terms)}, me.diagnostics)
    return _guard(run)


@app.post("/mellin/differentiate")
def mellin_diff(req: DiffRequest) -> CommandResult:
    def run():
        idx = parsing.parse_sum_index(req.index)
        d = differentiate(idx, req.order)
        payload = {"index": str(idx), "order": req.order, "n_terms": len(d.terms)}
        if req.n is not None:
            payload["value_at_n"] = parsing.mpf_str(d.eval_exact_sums(req.n, _prec(req.prec)), _prec(req.prec))
        return _ok(payload)
    return _guard(run)


@app.post("/constants/eval")
def constants_eval(req: ConstRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        bits = req.expr.split()
        kind = bits[0].lower()
        if kind == "sigma":
            idx = parsing.parse_sum_index(bits[1])
            v = sigma_value(idx, prec)
        elif kind == "zeta":
            v = mp.zeta(int(bits[1]))
        elif kind == "catalan":
            v = +mp.catalan
        elif kind == "pi":
            v = +mp.pi
        elif kind == "hpl1":
            v = hpl_at_one(parsing.parse_word(bits[1]), prec)
        elif kind == "jsum":
            r = int(bits[1])
            j1, j2, m2 = j_sums(r, prec)
            return _ok({"J1": parsing.mpf_str(j1, prec), "J2": parsing.mpf_str(j2, prec),
                        "M": parsing.mpf_str(m2, prec)})
        else:
            raise ValueError(f"unknown constant expression {req.expr!r}")
        return _ok({"expr": req.expr, "value": parsing.mpf_str(v, prec)})
    return _guard(run)


@app.post("/constants/polygamma")
def constants_polygamma(req: PolygammaRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        expr = polygamma_reduce(req.order, req.p, req.q)
        v = eval_constant(expr, prec)
        ref = mp.psi(req.order, mp.mpf(req.p) / req.q)
        return _ok({"order": req.order, "p": req.p, "q": req.q, "reduction": repr(expr),
                    "value": parsing.mpf_str(v, prec),
                    "psi_check_error": parsing.mpf_str(abs(v - ref), 3)})
    return _guard(run)


@app.post("/constants/table4")
def constants_table4(req: Table4Request) -> CommandResult:
    def run():
        return _ok({"basis_row": table4_basis_row(req.l_max)})
    return _guard(run)


@app.post("/constants/table5")
def constants_table5(req: Table5Request) -> CommandResult:
    def run():
        return _ok({"rows": table5(req.l_max)})
    return _guard(run)


@app.post("/constants/rank")
def constants_rank(req: RankRequest) -> CommandResult:
    def run():
        if req.weight == 1:
            rank = relation_rank_w1(req.cyclotomy)
            return _ok({"weight": 1, "cyclotomy": req.cyclotomy, "basis": rank,
                        "formula": basis_count_w1(req.cyclotomy)})
        if req.weight == 2:
            basis = basis_count_w2_stuffle(req.cyclotomy)
            return _ok({"weight": 2, "cyclotomy": req.cyclotomy,
                        "basis_stuffle_only": basis,
                        "formula_A": count_table5(req.cyclotomy, "A")})
        raise ValueError("rank verification is desk-scale: weight in {1, 2}")
    return _guard(run)


@app.post("/constants/ramanujan")
def constants_ramanujan(req: RamanujanRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        g1, h1 = ramanujan_values(prec)
        return _ok({"G1": parsing.mpf_str(g1, prec), "H1": parsing.mpf_str(h1, prec),
                    "equal": False})
    return _guard(run)


@app.post("/roots/liroot")
def roots_liroot(req: LiRootRequest) -> CommandResult:
    def run():
        prec = _prec(req.prec)
        v = li_root(req.weight, req.l, req.k, prec)
        payload = {"weight": req.weight, "l": req.l, "k": req.k,
                   "re": parsing.mpf_str(v.value.real, prec),
                   "im": parsing.mpf_str(v.value.imag, prec)}
        if v.re_closed is not None:
            payload["re_closed"] = repr(v.re_closed)
        if v.im_closed is not None:
            payload["im_closed"] = repr(v.im_closed)
        return _ok(payload)
    return _guard(run)


@app.post("/roots/motivic")
def roots_motivic(req: MotivicRequest) -> CommandResult:
    def run():
        return _ok({"w": req.w, "coefficients": [motivic_dim(req.w, n) for n in range(req.n_max + 1)]})
    return _guard(run)


@app.post("/verify")
def verify(req: VerifySuite) -> CommandResult:
    def run():
        from ..acceptance import run_suite

        report = run_suite(req.suite, fast=req.fast)
        ok = all(item["ok"] for item in report)
        result = CommandResult(status="ok" if ok else "error",
                               payload={"criteria": report},
                               diagnostics=[] if ok else ["some criteria failed"])
        return result
    return _guard(run)
