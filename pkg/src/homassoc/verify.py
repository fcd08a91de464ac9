"""Seeded, exact verification of the Gerstenhaber-structure identities.

Each identity is checked on random equivariant cochains (or random
cocycles, drawn from the computed cocycle basis) for every degree pattern
in the plan.  Equality is exact; the first failing sample is shrunk by
zeroing its random coefficients and recorded with everything needed to
replay it.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from . import _tensor as T
from .algebra import HomAlgebra
from .classical import classical_dimensions
from .cochain import (Cochain, CochainSpaceBasis, cochain_space_basis, mu_cochain,
                      random_coefficients, zero_cochain)
from .cohomology import HochschildComplex
from .linalg import format_rational
from .ops import (bracket, bracket_leibniz_defect, circ, circ_i, correction_terms, cup, delta,
                  homotopy, leibniz_defect, leibniz_sign, sign, telescoping_sum)


@dataclass(frozen=True)
class Check:
    """``lhs == rhs`` exactly (``rhs`` None means zero)."""
    label: str
    lhs: Cochain
    rhs: Optional[Cochain] = None


@dataclass(frozen=True)
class Coboundary:
    """``value`` lies in the coboundary space of its degree."""
    label: str
    value: Cochain


@dataclass(frozen=True)
class SignedCheck:
    """``lhs == eps * rhs`` for one sign ``eps`` shared by every sample of a pattern."""
    label: str
    lhs: Cochain
    rhs: Cochain


@dataclass
class Identity:
    name: str
    kind: str                      # unary, binary, ternary, cocycle_binary, cocycle_ternary, oracle
    inputs: Callable[[tuple], Optional[list[tuple[str, int]]]]
    checks: Callable
    description: str = ""


class Context:
    def __init__(self, algebra: HomAlgebra):
        self.algebra = algebra
        self._complex: Optional[HochschildComplex] = None
        self.mu = mu_cochain(algebra)

    @property
    def complex(self) -> HochschildComplex:
        if self._complex is None:
            self._complex = HochschildComplex(self.algebra)
        return self._complex

    def space(self, kind: str, n: int) -> CochainSpaceBasis:
        if kind == "C":
            return cochain_space_basis(self.algebra, n)
        return self.complex.cocycle_space(n)


# -- identities ---------------------------------------------------------------

def _equivariance_pair(label: str, x: Cochain) -> Check:
    A = x.algebra
    left = Cochain(A, T.postcompose(x.coeffs, A.alpha))
    right = Cochain(A, T.compose(x.coeffs, [T.linear_piece(A.alpha)] * x.degree))
    return Check(f"{label} is equivariant", left, right)


def _delta_squared(ctx, f):
    yield Check("delta(delta(f)) = 0", delta(delta(f, check=False), check=False))


def _equivariance(ctx, f, g):
    yield _equivariance_pair("delta(f)", delta(f, check=False))
    for i in range(f.degree):
        yield _equivariance_pair(f"f o_{i} g", circ_i(f, g, i))
    yield _equivariance_pair("f o g", circ(f, g))
    yield _equivariance_pair("[f, g]", bracket(f, g))
    yield _equivariance_pair("f u g", cup(f, g))


def _delta_via_bracket(ctx, f):
    n, mu = f.degree, ctx.mu
    df = delta(f, check=False)
    yield Check("delta f = -(f o mu - (-1)^(n-1) mu o f)", df, -(circ(f, mu) - sign(n - 1) * circ(mu, f)))
    yield Check("delta f = -[f, mu]", df, -bracket(f, mu))
    yield Check("delta f = (-1)^(n-1) [mu, f]", df, sign(n - 1) * bracket(mu, f))


def _prelie_a(ctx, f, g, h):
    p_ = h.degree - 1
    fg = [circ_i(f, g, i) for i in range(f.degree)]
    for i in range(f.degree):
        for j in range(i):
            yield Check(f"(f o_{i} g) o_{j} h = (f o_{j} h) o_{i + p_} g",
                        circ_i(fg[i], h, j), circ_i(circ_i(f, h, j), g, i + p_))


def _prelie_b(ctx, f, g, h):
    n_ = g.degree - 1
    fg = [circ_i(f, g, i) for i in range(f.degree)]
    gh = [circ_i(g, h, k) for k in range(g.degree)]
    for i in range(f.degree):
        for j in range(i, n_ + i + 1):
            yield Check(f"(f o_{i} g) o_{j} h = f o_{i} (g o_{j - i} h)",
                        circ_i(fg[i], h, j), circ_i(f, gh[j - i], i))


def _associator(f, g, h):
    return circ(circ(f, g), h) - circ(f, circ(g, h))


def _prelie_expansion(ctx, f, g, h):
    m_, n_, p_ = f.degree - 1, g.degree - 1, h.degree - 1
    total = zero_cochain(f.algebra, m_ + n_ + p_ + 1)
    for i in range(m_ + 1):
        fg = circ_i(f, g, i)
        for j in list(range(i)) + list(range(n_ + i + 1, m_ + n_ + 1)):
            total = total + sign(n_ * i + p_ * j) * circ_i(fg, h, j)
    yield Check("(f o g) o h - f o (g o h) = sum over outer pairs", _associator(f, g, h), total)


def _graded_prelie(ctx, f, g, h):
    n_, p_ = g.degree - 1, h.degree - 1
    yield Check("graded pre-Lie identity", _associator(f, g, h), sign(n_ * p_) * _associator(f, h, g))


def _jacobi(ctx, f, g, h):
    a, b, c = f.degree - 1, g.degree - 1, h.degree - 1
    yield Check("[f, g] = -(-1)^(|f||g|) [g, f]", bracket(f, g), -sign(a * b) * bracket(g, f))
    total = (sign(a * c) * bracket(f, bracket(g, h)) + sign(b * a) * bracket(g, bracket(h, f))
             + sign(c * b) * bracket(h, bracket(f, g)))
    yield Check("graded Jacobi", total)


def _bracket_derivation(ctx, f, g):
    n = g.degree
    lhs = delta(bracket(f, g), check=False)
    rhs = sign(n + 1) * bracket(delta(f, check=False), g) + bracket(f, delta(g, check=False))
    yield Check("delta[f, g] = (-1)^(n+1) [delta f, g] + [f, delta g]", lhs, rhs)


def _cup_assoc(ctx, f, g, h):
    yield Check("f u (g u h) = (f u g) u h", cup(f, cup(g, h)), cup(cup(f, g), h))


def _cup_via_circ(ctx, f, g):
    mu, m = ctx.mu, f.degree
    yield Check("f u g = (mu o_0 f) o_m g", cup(f, g), circ_i(circ_i(mu, f, 0), g, m))
    yield Check("g u f = (mu o_1 f) o_0 g", cup(g, f), circ_i(circ_i(mu, f, 1), g, 0))


def _cup_derivation(ctx, f, g):
    m = f.degree
    lhs = delta(cup(f, g), check=False)
    rhs = cup(delta(f, check=False), g) + sign(m) * cup(f, delta(g, check=False))
    yield Check("delta(f u g) = delta f u g + (-1)^m f u delta g", lhs, rhs)


def _cup_commutator_homotopy(ctx, f, g):
    m, n = f.degree, g.degree
    lhs = (circ(f, delta(g, check=False)) - delta(circ(f, g), check=False)
           + sign(n - 1) * circ(delta(f, check=False), g))
    rhs = sign(n - 1) * (cup(g, f) - sign(m * n) * cup(f, g))
    yield Check("f o delta g - delta(f o g) + (-1)^(n-1) delta f o g = (-1)^(n-1)(g u f - (-1)^(mn) f u g)",
                lhs, rhs)


def _cup_commutative(ctx, f, g):
    m, n = f.degree, g.degree
    comm = cup(g, f) - sign(m * n) * cup(f, g)
    yield Check("(-1)^n (g u f - (-1)^(mn) f u g) = delta(f o g)", sign(n) * comm, delta(circ(f, g), check=False))
    yield Coboundary("g u f - (-1)^(mn) f u g is a coboundary", comm)


def _cohomology_operations(ctx, f, g, w=None):
    yield Check("delta(f u g) = 0", delta(cup(f, g), check=False))
    yield Check("delta[f, g] = 0", delta(bracket(f, g), check=False))
    if w is not None:
        dw = delta(w, check=False)
        yield Coboundary("delta w u g is a coboundary", cup(dw, g))
        yield Coboundary("g u delta w is a coboundary", cup(g, dw))
        yield Coboundary("[delta w, g] is a coboundary", bracket(dw, g))


def _cup_circ_distributive(ctx, f, g, h):
    m, p = f.degree, h.degree
    yield Check("(f u g) o h = (f o h) u g + (-1)^(m(p-1)) f u (g o h)",
                circ(cup(f, g), h), cup(circ(f, h), g) + sign(m * (p - 1)) * cup(f, circ(g, h)))


def _correction_terms(ctx, f, g, h, hz):
    m, p = f.degree, h.degree
    for i in range(1, p):
        hf = circ_i(h, f, i - 1)
        for j in range(m + i, m + p):
            a, b, c = correction_terms(f, g, h, i, j)
            yield Check(f"correction terms ({i}, {j}) sum to delta((h o_{i - 1} f) o_{j - 1} g)",
                        a + b + c, delta(circ_i(hf, g, j - 1), check=False))
    for i in range(p):
        for j in range(m + i, m + p):
            yield Check(f"telescoping relation ({i}, {j}) vanishes for a cocycle h",
                        telescoping_sum(f, g, hz, i, j))


def _homotopy_coboundary(ctx, f, g, h):
    m, n = f.degree, g.degree
    H = homotopy(f, g, h)
    yield _equivariance_pair("H", H)
    yield Check("delta H = (-1)^((m-1)n) [h o (f u g) - (-1)^(n(p-1)) (h o f) u g - f u (h o g)]",
                delta(H, check=False), sign((m - 1) * n) * leibniz_defect(f, g, h))


def _leibniz(ctx, f, g, h):
    lhs = bracket_leibniz_defect(f, g, h)
    yield SignedCheck("[f u g, h] - [f, h] u g - (-1)^(m(p-1)) f u [g, h] = eps delta H",
                      lhs, delta(homotopy(f, g, h), check=False))
    yield Coboundary("bracket Leibniz defect is a coboundary", lhs)


def _c(*idx):
    return lambda pat: [("C", pat[i]) for i in idx]


def _z(*idx):
    return lambda pat: [("Z", pat[i]) for i in idx]


def _cohomology_ops_inputs(pat):
    m, n = pat
    inputs = [("Z", m), ("Z", n)]
    if m >= 2:
        inputs.append(("C", m - 1))
    return inputs


IDENTITIES: tuple[Identity, ...] = (
    Identity("delta_squared", "unary", _c(0), _delta_squared),
    Identity("equivariance", "binary", _c(0, 1), _equivariance),
    Identity("delta_via_bracket", "unary", _c(0), _delta_via_bracket),
    Identity("prelie_branch_a", "ternary", _c(0, 1, 2), _prelie_a),
    Identity("prelie_branch_b", "ternary", _c(0, 1, 2), _prelie_b),
    Identity("prelie_expansion", "ternary", _c(0, 1, 2), _prelie_expansion),
    Identity("graded_prelie", "ternary", _c(0, 1, 2), _graded_prelie),
    Identity("jacobi", "ternary", _c(0, 1, 2), _jacobi),
    Identity("bracket_derivation", "binary", _c(0, 1), _bracket_derivation),
    Identity("cup_assoc", "ternary", _c(0, 1, 2), _cup_assoc),
    Identity("cup_via_circ", "binary", _c(0, 1), _cup_via_circ),
    Identity("cup_derivation", "binary", _c(0, 1), _cup_derivation),
    Identity("cup_commutator_homotopy", "binary", _c(0, 1), _cup_commutator_homotopy),
    Identity("cup_circ_distributive", "ternary", _c(0, 1, 2), _cup_circ_distributive),
    Identity("cup_commutative_in_cohomology", "cocycle_binary", _z(0, 1), _cup_commutative),
    Identity("cohomology_operations", "cocycle_binary", _cohomology_ops_inputs, _cohomology_operations),
    Identity("homotopy_correction_terms", "cocycle_ternary",
             lambda pat: [("Z", pat[0]), ("Z", pat[1]), ("C", pat[2]), ("Z", pat[2])], _correction_terms),
    Identity("homotopy_coboundary", "cocycle_ternary", _z(0, 1, 2), _homotopy_coboundary),
    Identity("leibniz_up_to_coboundary", "cocycle_ternary", _z(0, 1, 2), _leibniz),
    Identity("classical_limit", "oracle", lambda pat: None, None),
)

BY_NAME = {ident.name: ident for ident in IDENTITIES}
IDENTITY_NAMES = tuple(BY_NAME)
# identities that only hold exactly at the cochain level for every input
COCHAIN_IDENTITIES = tuple(i.name for i in IDENTITIES if i.kind in ("unary", "binary", "ternary"))
COCYCLE_IDENTITIES = tuple(i.name for i in IDENTITIES if i.kind.startswith("cocycle"))

DEFAULT_COCYCLE_PATTERNS = ((2, 2, 2), (1, 2, 2), (2, 1, 2), (2, 2, 3))


# -- plan and report ----------------------------------------------------------

@dataclass
class VerificationPlan:
    identities: tuple[str, ...] = IDENTITY_NAMES
    max_degree: int = 7
    cocycle_patterns: tuple[tuple[int, int, int], ...] = DEFAULT_COCYCLE_PATTERNS
    cocycle_max_degree: int = 5
    samples: int = 25
    seed: int = 0
    coeff_bound: int = 3
    algebra_file: Optional[str] = None

    def __post_init__(self):
        self.identities = tuple(self.identities)
        unknown = [n for n in self.identities if n not in BY_NAME]
        if unknown:
            raise ValueError(f"unknown identities: {', '.join(unknown)}")
        self.cocycle_patterns = tuple(tuple(p) for p in self.cocycle_patterns)
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.max_degree < 3:
            raise ValueError("max_degree must be at least 3")
        for pat in self.cocycle_patterns:
            if len(pat) != 3 or min(pat) < 1:
                raise ValueError(f"bad cocycle pattern {pat}")

    def patterns(self, kind: str) -> list[tuple]:
        D = self.max_degree
        if kind == "unary":
            return [(n,) for n in range(1, D - 1)]
        if kind == "binary":
            return [(m, n) for m in range(1, D) for n in range(1, D) if m + n <= D - 1]
        if kind == "ternary":
            return [(m, n, p) for m in range(1, D) for n in range(1, D) for p in range(1, D)
                    if m + n + p <= D]
        if kind == "cocycle_binary":
            top = min(self.cocycle_max_degree, D - 1)
            return [(m, n) for m in range(1, D) for n in range(1, D) if m + n <= top]
        if kind == "cocycle_ternary":
            return [p for p in self.cocycle_patterns if sum(p) <= D]
        return []

    def to_dict(self) -> dict:
        d = asdict(self)
        d["identities"] = list(self.identities)
        d["cocycle_patterns"] = [list(p) for p in self.cocycle_patterns]
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationPlan":
        allowed = set(cls.__dataclass_fields__)
        extra = set(data) - allowed
        if extra:
            raise ValueError(f"unknown plan fields: {', '.join(sorted(extra))}")
        return cls(**data)


@dataclass
class IdentityResult:
    name: str
    status: str = "pass"
    trials: int = 0
    patterns: int = 0
    skipped_patterns: list = field(default_factory=list)
    reason: Optional[str] = None
    counterexample: Optional[dict] = None
    signs: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "trials": self.trials, "patterns": self.patterns}
        if self.skipped_patterns:
            d["skipped_patterns"] = self.skipped_patterns
        if self.reason:
            d["reason"] = self.reason
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.signs is not None:
            d["signs"] = self.signs
        return d


@dataclass
class VerificationReport:
    algebra: dict
    plan: dict
    results: list[IdentityResult]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def result(self, name: str) -> IdentityResult:
        return next(r for r in self.results if r.name == name)

    def to_dict(self) -> dict:
        counts = {s: sum(r.status == s for r in self.results) for s in ("pass", "fail", "skipped")}
        return {
            "algebra": self.algebra,
            "plan": self.plan,
            "identities": [r.to_dict() for r in self.results],
            "summary": counts,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


# -- running ------------------------------------------------------------------

def _first_difference(lhs: Cochain, rhs: Optional[Cochain]) -> dict:
    A = lhs.algebra
    other = rhs.coeffs if rhs is not None else np.zeros(lhs.coeffs.shape, dtype=int)
    idx = tuple(int(x) for x in np.argwhere(lhs.coeffs != other)[0])
    return {
        "basis_tuple": [A.basis[i] for i in idx[:-1]],
        "output": A.basis[idx[-1]],
        "lhs": format_rational(lhs.coeffs[idx]),
        "rhs": format_rational(other[idx]),
    }


def _evaluate(ctx: Context, ident: Identity, cochains: list[Cochain], expected_signs: dict) -> Optional[dict]:
    """Run one sample; return a failure description or None."""
    for chk in ident.checks(ctx, *cochains):
        if isinstance(chk, Check):
            if (chk.rhs is None and not chk.lhs.is_zero()) or (chk.rhs is not None and chk.lhs != chk.rhs):
                return {"check": chk.label, **_first_difference(chk.lhs, chk.rhs)}
        elif isinstance(chk, Coboundary):
            if not ctx.complex.is_coboundary(chk.value):
                return {"check": chk.label, "detail": f"not in the degree-{chk.value.degree} coboundaries"}
        elif isinstance(chk, SignedCheck):
            ok = {e for e in expected_signs["candidates"] if chk.lhs == e * chk.rhs}
            if not ok:
                eps = sorted(expected_signs["candidates"])
                ref = chk.rhs * eps[-1] if eps else chk.rhs
                return {"check": chk.label, "expected_signs": eps, **_first_difference(chk.lhs, ref)}
            expected_signs["next"] = ok
    return None


def _trial_seed(seed: int, ident_index: int, pattern: tuple, sample: int) -> list[int]:
    return [seed, ident_index, *pattern, sample]


def _build(ctx: Context, spaces: list[CochainSpaceBasis], coeffs: list[list[int]]) -> list[Cochain]:
    return [sp.combine(c) for sp, c in zip(spaces, coeffs)]


def _shrink(ctx, ident, spaces, coeffs, signs) -> list[list[int]]:
    coeffs = [list(c) for c in coeffs]
    for k in range(len(coeffs)):
        for r in range(len(coeffs[k])):
            if coeffs[k][r] == 0:
                continue
            saved = coeffs[k][r]
            coeffs[k][r] = 0
            trial_signs = {"candidates": set(signs["candidates"])}
            if _evaluate(ctx, ident, _build(ctx, spaces, coeffs), trial_signs) is None:
                coeffs[k][r] = saved
    return coeffs


def _run_sampled(ctx: Context, plan: VerificationPlan, ident: Identity, res: IdentityResult) -> None:
    index = IDENTITY_NAMES.index(ident.name)
    signed = ident.name == "leibniz_up_to_coboundary"
    if signed:
        res.signs = {}
    if ident.kind == "cocycle_ternary":
        for pat in plan.cocycle_patterns:
            if sum(pat) > plan.max_degree:
                res.skipped_patterns.append({"degrees": list(pat), "reason": "exceeds max_degree"})
    for pat in plan.patterns(ident.kind):
        inputs = ident.inputs(pat)
        spaces = [ctx.space(kind, n) for kind, n in inputs]
        if ident.kind.startswith("cocycle"):
            empty = [f"Z^{n}" for (kind, n), sp in zip(inputs, spaces) if kind == "Z" and len(sp) == 0]
            # the cocycle standing in for h in the telescoping check is optional
            if ident.name == "homotopy_correction_terms":
                empty = empty[:2] if len(spaces[0]) == 0 or len(spaces[1]) == 0 else []
            if empty:
                res.skipped_patterns.append({"degrees": list(pat), "reason": f"{', '.join(dict.fromkeys(empty))} = 0"})
                continue
        res.patterns += 1
        signs = {"candidates": {1, -1}}
        for sample in range(plan.samples):
            tseed = _trial_seed(plan.seed, index, pat, sample)
            rng = np.random.default_rng(tseed)
            coeffs = [random_coefficients(rng, len(sp), plan.coeff_bound) for sp in spaces]
            res.trials += 1
            failure = _evaluate(ctx, ident, _build(ctx, spaces, coeffs), signs)
            if failure is not None:
                if not signed:
                    coeffs = _shrink(ctx, ident, spaces, coeffs, signs)
                    failure = _evaluate(ctx, ident, _build(ctx, spaces, coeffs), signs) or failure
                res.status = "fail"
                res.counterexample = {
                    "algebra": ctx.algebra.name,
                    "degrees": list(pat),
                    "trial_seed": tseed,
                    "inputs": [{"space": kind, "degree": n, "coefficients": [int(x) for x in c]}
                               for (kind, n), c in zip(inputs, coeffs)],
                    **failure,
                }
                return
            if signed:
                signs["candidates"] = signs.pop("next", signs["candidates"])
        if signed:
            m, n, p = pat
            cand = sorted(signs["candidates"])
            closed = leibniz_sign(m, n, p)
            res.signs[",".join(map(str, pat))] = {
                "resolved": cand[0] if len(cand) == 1 else None,
                "closed_form": closed,
                "consistent": closed in cand,
            }
            if closed not in cand:
                res.status = "fail"
                res.reason = f"sign {cand[0]} at {pat} contradicts the closed form {closed}"
                return
    if res.patterns == 0:
        res.status = "skipped"
        res.reason = "every requested degree pattern has a zero cocycle space"


def _run_classical(ctx: Context, plan: VerificationPlan, res: IdentityResult) -> None:
    A = ctx.algebra
    if not A.alpha_is_identity:
        res.status = "skipped"
        res.reason = "twisting map is not the identity"
        return
    top = min(plan.max_degree, 4)
    oracle = classical_dimensions(A.mu.tolist(), top)
    res.patterns = top - 1
    for n in range(2, top + 1):
        sl = ctx.complex.slice(n)
        mine = {"dimZ": sl.dimZ, "dimB": sl.dimB, "dimH": sl.dimH}
        res.trials += 1
        if mine != oracle[n]:
            res.status = "fail"
            res.counterexample = {"algebra": A.name, "degrees": [n], "artifact": mine, "oracle": oracle[n]}
            return


def run_plan(algebra: HomAlgebra, plan: Optional[VerificationPlan] = None,
             require_valid: bool = True) -> VerificationReport:
    """Evaluate every identity of ``plan`` on ``algebra``.

    With ``require_valid=False`` an invalid algebra is still exercised;
    that is how corrupted structure constants are shown to break the
    identities.
    """
    plan = plan or VerificationPlan()
    rep = algebra.validate()
    if require_valid and not rep.valid:
        raise ValueError(f"{algebra.name} is not a multiplicative hom-associative algebra")
    ctx = Context(algebra)
    results = []
    for name in IDENTITY_NAMES:
        if name not in plan.identities:
            continue
        ident = BY_NAME[name]
        res = IdentityResult(name)
        try:
            if ident.kind == "oracle":
                _run_classical(ctx, plan, res)
            else:
                _run_sampled(ctx, plan, ident, res)
        except Exception as exc:  # invalid algebras can break the machinery itself
            res.status = "fail"
            res.counterexample = {"algebra": algebra.name, "error": f"{type(exc).__name__}: {exc}"}
        results.append(res)
    info = {"name": algebra.name, "dimension": algebra.dim, "valid": rep.valid}
    return VerificationReport(info, plan.to_dict(), results)


def replay(algebra: HomAlgebra, name: str, counterexample: dict) -> Optional[dict]:
    """Re-evaluate a recorded counterexample; returns the failure (None if it no longer fails)."""
    ident = BY_NAME[name]
    ctx = Context(algebra)
    spaces = [ctx.space(inp["space"], inp["degree"]) for inp in counterexample["inputs"]]
    coeffs = [inp["coefficients"] for inp in counterexample["inputs"]]
    signs = {"candidates": set(counterexample.get("expected_signs", (1, -1)))}
    return _evaluate(ctx, ident, _build(ctx, spaces, coeffs), signs)
