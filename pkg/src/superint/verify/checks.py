"""Check specifications, reports and the individual check kinds."""

from __future__ import annotations

import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..model.eigen import eigenfunction, parabolic_gauge_vars
from ..model.gauged import (
    exact_det,
    parabolic_generators,
    decompose,
    recompose,
    y1_level_eigenvalues,
    y1_tridiagonal,
)
from ..model.params import ModelParams
from ..model.spectrum import brute_force_level, spectrum, states, states_up_to
from ..operators import PointEvaluator
from ..polycore import MultiPoly, laguerre
from .mutations import check_mutation, family
from .rng import SplitMix64
from .sampling import exact_points, float_points, format_point, polynomial_test_jet

KINDS = (
    "exact-eigen",
    "numeric-eigen",
    "commutator-zero",
    "commutator-nonzero",
    "commutator-identity",
    "tridiagonal",
    "spectrum-set",
    "degeneracy",
    "generator-decomposition",
)
EXACT_KINDS = ("exact-eigen", "tridiagonal", "spectrum-set", "degeneracy", "generator-decomposition")

# relative residual floor for |psi| near a node
PSI_FLOOR = 1e-30


@dataclass
class CheckSpec:
    """One verification task.

    ``scope`` holds the kind-specific ranges (see the check functions).  For
    numeric-eigen in exact mode and for the exact kinds the tolerance is 0.
    For commutator-nonzero the tolerance is a lower bound: the check passes
    when some test jet shows a residual of at least that size.
    """

    name: str
    kind: str
    params: ModelParams
    scope: dict = field(default_factory=dict)
    tolerance: float = 0.0
    seed: int = 0
    mutation: str | None = None

    def validate(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown check kind {self.kind!r}")
        check_mutation(self.mutation)
        exact = self.kind in EXACT_KINDS or self.scope.get("mode") == "exact"
        if exact and self.tolerance != 0:
            raise ValueError(f"exact check {self.name!r} must have tolerance 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit natural")

    def params_json(self) -> dict:
        out = self.params.to_json()
        out["scope"] = _jsonable(self.scope)
        if self.mutation:
            out["mutation"] = self.mutation
        return out


@dataclass
class CheckReport:
    name: str
    kind: str
    params: dict
    seed: int
    tolerance: float
    status: str
    worst_residual: object
    witness: object
    wall_ms: float

    FIELDS = ("name", "kind", "params", "seed", "tolerance", "status", "worst_residual", "witness", "wall_ms")

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    @classmethod
    def from_json(cls, d: dict) -> "CheckReport":
        missing = [k for k in cls.FIELDS if k not in d]
        if missing:
            raise ValueError(f"report is missing fields {missing}")
        extra = [k for k in d if k not in cls.FIELDS]
        if extra:
            raise ValueError(f"report has unknown fields {extra}")
        if d["status"] not in ("pass", "fail", "error"):
            raise ValueError(f"bad status {d['status']!r}")
        return cls(**{k: d[k] for k in cls.FIELDS})

    def deterministic(self) -> dict:
        """Report content without the wall time (identical across runs)."""
        out = self.to_json()
        out.pop("wall_ms")
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class _Outcome:
    """Accumulates residuals; remembers the first (smallest-scope) failure."""

    def __init__(self, spec: CheckSpec, exact: bool, lower_bound: bool = False):
        self.exact = exact
        self.tol = spec.tolerance
        self.lower = lower_bound
        self.worst = Fraction(0) if exact else 0.0
        self.witness = None
        self.info = None

    def bad(self, r) -> bool:
        if self.exact:
            return r != 0
        return not (r <= self.tol)  # NaN counts as a failure

    def add(self, r, where: dict):
        if self.exact:
            r = abs(Fraction(r))
        else:
            r = float(r)
        if self.lower:
            if r > self.worst:
                self.worst = r
                self.witness = dict(where, residual=r)
            return
        if r > self.worst or (not self.exact and r != r):
            self.worst = r
        if self.witness is None and self.bad(r):
            self.witness = dict(where, residual=str(r) if self.exact else r)

    def status(self) -> str:
        if self.lower:
            return "pass" if self.worst >= self.tol else "fail"
        if self.exact:
            return "pass" if self.worst == 0 else "fail"
        return "pass" if not self.bad(self.worst) else "fail"

    def residual(self):
        return str(self.worst) if self.exact else self.worst


# -- exact-eigen ---------------------------------------------------------------


def _exact_eigen(spec: CheckSpec, out: _Outcome):
    """Gauged Qp, Qm, Q0, Q1 and Z_l act on every polynomial part as predicted.

    scope: qmax (levels 0..qmax of parabolic states).
    """
    P = spec.params
    for qn in states_up_to(P.n, "parabolic", spec.scope.get("qmax", 4)):
        ef = eigenfunction(P, qn)
        rec = ef.record
        g = family("gauged", P, spec.mutation, state=rec)
        mtop = rec.m[P.n - 2]
        poly = ef.poly
        targets = [
            ("Qp", g.Qp, -(2 * qn.N1 + mtop + 1)),
            ("Qm", g.Qm, -(2 * qn.N2 + mtop + 1)),
            ("Q0", g.Q0, 2 * P.gamma),
            ("Q1", g.Q1, 2 * rec.lam),
        ] + [(f"Z{l}", Z, rec.k[l]) for l, Z in g.Z.items()]
        for name, op, kappa in targets:
            diff = op.apply(poly) - poly * kappa
            r = max((abs(c) for c in diff.terms.values()), default=Fraction(0))
            out.add(r, {"state": qn.label(), "operator": name})


# -- numeric-eigen ---------------------------------------------------------------


def _eigen_targets(ops: dict, rec) -> list:
    out = []
    for name, op in ops.items():
        base = name.split(":")[0]
        if base == "H":
            out.append((name, op, rec.E))
        elif base == "X":
            out.append((name, op, rec.lam))
        elif base[0] in "ZY" and base[1:].isdigit():
            out.append((name, op, rec.k[int(base[1:])]))
    return out


def _numeric_eigen(spec: CheckSpec, out: _Outcome):
    """Original operators act on psi with the predicted eigenvalues.

    scope: system (parabolic|spherical), frame (curvilinear|cartesian),
    qmax, points, mode (float|exact).
    """
    P = spec.params
    system = spec.scope.get("system", "parabolic")
    frame = spec.scope.get("frame", "curvilinear")
    exact = spec.scope.get("mode", "float") == "exact"
    npts = spec.scope.get("points", 20)
    where_sys = system if frame == "curvilinear" else "cartesian"
    if exact:
        points = exact_points(where_sys, P.n, npts)
    else:
        points = float_points(where_sys, P.n, npts, SplitMix64(spec.seed, spec.name).split("points"))
    cart = family("cartesian", P, spec.mutation) if frame == "cartesian" else None
    for qn in states_up_to(P.n, system, spec.scope.get("qmax", 4)):
        ef = eigenfunction(P, qn)
        rec = ef.record
        if frame == "cartesian":
            keep = ("H", "X", "Z") if system == "parabolic" else ("H", "Y")
            ops = {k: v for k, v in cart.items() if k[0] in keep}
            psi = ef.psi_cartesian()
            names = tuple(f"x{i}" for i in range(1, P.n + 1))
        else:
            ops = family(system, P, spec.mutation, record=rec)
            psi = ef.psi()
            names = ef.vars
        targets = _eigen_targets(ops, rec)
        for pt in points:
            ev = PointEvaluator(names, pt, exact)
            f = ev.lift(psi, 2)
            psi0 = f.truncate(0)
            for name, op, kappa in targets:
                got = ev.apply(op, f, 0)
                if exact:
                    r = (got - psi0 * kappa).value
                else:
                    v = float(psi0.value)
                    r = abs(float(got.value) - float(kappa) * v) / max(abs(v), PSI_FLOOR)
                out.add(r, {"state": qn.label(), "operator": name, "point": format_point(pt)})


# -- commutators -------------------------------------------------------------------


def commutator_terms(a: str, b: str) -> list:
    return [(Fraction(1), (a, b)), (Fraction(-1), (b, a))]


def _identities(spec: CheckSpec) -> tuple[dict, list]:
    """Operators by name and the identities (label, [(coef, word), ...]) to test."""
    P = spec.params
    sc = spec.scope
    if sc.get("family") == "hydrogen":
        a, f = Fraction(sc.get("a", "1/3")), Fraction(sc.get("f", "2/5"))
        ops, idents = {}, []
        sets = family("hydrogen", P, spec.mutation, a=a, f=f)
        wanted = sc.get("sets")
        for i, (label, first, second) in enumerate(sets, start=1):
            if wanted and i not in wanted:
                continue
            ops[f"S{i}a"], ops[f"S{i}b"] = first, second
            idents.append((f"set{i} {label}", commutator_terms(f"S{i}a", f"S{i}b")))
        return ops, idents
    ops = family("cartesian", P, spec.mutation)
    idents = []
    for a, b in sc.get("pairs", []):
        idents.append((f"[{a},{b}]", commutator_terms(a, b)))
    for ident in sc.get("identities", []):
        terms = [(Fraction(c), tuple(w)) for c, w in ident["terms"]]
        idents.append((ident["label"], terms))
    for _, terms in idents:
        for _, word in terms:
            for name in word:
                if name not in ops:
                    raise ValueError(f"unknown operator {name!r}; available: {', '.join(ops)}")
    return ops, idents


def _commutators(spec: CheckSpec, out: _Outcome):
    """Identities among words of operators, on seeded polynomial test jets.

    scope: pairs [[A, B], ...] and/or identities [{label, terms: [[coef, [A, B, ...]], ...]}],
    or family=hydrogen (with a, f, sets); jets (count), degree (test polynomial degree).
    """
    P = spec.params
    ops, idents = _identities(spec)
    n = P.n
    names = tuple(f"x{i}" for i in range(1, n + 1))
    jets = spec.scope.get("jets", 10)
    degree = spec.scope.get("degree", 4)
    rng = SplitMix64(spec.seed, spec.name)
    for j in range(jets):
        r = rng.split(f"jet{j}")
        pt = float_points("cartesian", n, 1, r)[0]
        ev = PointEvaluator(names, pt, False)
        for label, terms in idents:
            worder = max(sum(ops[o].order for o in w) for _, w in terms)
            f = polynomial_test_jet(n, worder + 1, degree, r.split(label))
            memo = {}

            def word_jet(w):
                if not w:
                    return f
                got = memo.get(w)
                if got is None:
                    got = ev.apply(ops[w[0]], word_jet(w[1:]))
                    memo[w] = got
                return got

            results = [(c, word_jet(w)) for c, w in terms]
            k = min(res.order for _, res in results)
            total, scale = None, 0.0
            for c, res in results:
                t = res.truncate(k) * float(c)
                scale = max(scale, float(abs(t.c).max()))
                total = t if total is None else total + t
            resid = float(abs(total.c).max()) / max(scale, 1e-300)
            out.add(resid, {"identity": label, "jet": j, "point": format_point(pt)})


# -- tridiagonal -------------------------------------------------------------------


def _level_coordinates(poly: MultiPoly, N: int, basis: list) -> tuple[list, MultiPoly]:
    """Coordinates of ``poly`` in the level-N basis and the leftover outside its span."""
    rest = poly
    coords = []
    for a, b in enumerate(basis):
        mono = tuple([a, N - a] + [0] * (len(poly.vars) - 2))
        lead = b.coefficient(mono)
        c = rest.coefficient(mono) / lead
        coords.append(c)
        rest = rest - b * c
    return coords, rest


def _tridiagonal(spec: CheckSpec, out: _Outcome):
    """Gauged Y1 on L_{N1}^m(s) L_{N2}^m(t): three-term formula, flag, level spectrum.

    scope: Nmax, m_values (rationals as strings).
    """
    P = spec.params
    n = P.n
    Nmax = spec.scope.get("Nmax", 6)
    for mv in spec.scope.get("m_values", ["0", "1/2", "2"]):
        m = Fraction(mv)
        g = family("gauged", P, spec.mutation, state=m)
        G = g.vars
        lag = [laguerre(a, m, "s").embed(G) for a in range(2 * Nmax + 2)]
        lat = [laguerre(a, m, "t").embed(G) for a in range(2 * Nmax + 2)]

        def basis(a, b):
            if a < 0 or b < 0:
                return MultiPoly.zero(G)  # L_{-1} := 0
            return lag[a] * lat[b]

        for N1 in range(Nmax + 1):
            for N2 in range(Nmax + 1):
                lhs = g.Y1.apply(basis(N1, N2))
                cm, c0, cp = y1_tridiagonal(N1, N2, m, n)
                rhs = basis(N1 - 1, N2 + 1) * cm + basis(N1, N2) * c0 + basis(N1 + 1, N2 - 1) * cp
                diff = lhs - rhs
                where = {"m": str(m), "N1": N1, "N2": N2}
                out.add(max((abs(c) for c in diff.terms.values()), default=0), dict(where, test="three-term"))
                N = N1 + N2
                level = [basis(a, N - a) for a in range(N + 1)]
                _, rest = _level_coordinates(lhs, N, level)
                out.add(max((abs(c) for c in rest.terms.values()), default=0), dict(where, test="flag"))
        for N in range(Nmax + 1):
            level = [basis(a, N - a) for a in range(N + 1)]
            cols = [_level_coordinates(g.Y1.apply(b), N, level)[0] for b in level]
            M = [[cols[j][i] for j in range(N + 1)] for i in range(N + 1)]
            for kappa in y1_level_eigenvalues(N, m, n):
                shifted = [[M[i][j] - (kappa if i == j else 0) for j in range(N + 1)] for i in range(N + 1)]
                out.add(exact_det(shifted), {"m": str(m), "N": N, "test": "level-eigenvalue", "kappa": str(kappa)})


# -- spectrum set / degeneracy ------------------------------------------------------


def _spectrum_set(spec: CheckSpec, out: _Outcome):
    """Energies of parabolic and spherical states agree as sets; count relation.

    scope: qmax.
    """
    P = spec.params
    qmax = spec.scope.get("qmax", 8)
    par = {q: states(P.n, "parabolic", q) for q in range(qmax + 1)}
    sph = {q: states(P.n, "spherical", q) for q in range(qmax + 1)}
    e_par = {spectrum(P, s).E for q in par for s in par[q]}
    e_sph = {spectrum(P, s).E for q in sph for s in sph[q]}
    mismatch = sorted(e_par ^ e_sph)
    out.add(len(mismatch), {"test": "energy-set", "only_in_one": [str(e) for e in mismatch[:5]]})
    counts = {}
    for q in range(qmax + 1):
        half = sum(1 for s in par[q] if s.N1 <= s.N2)
        counts[str(q)] = {"parabolic": len(par[q]), "spherical": len(sph[q]), "parabolic_N1<=N2": half}
        out.add(abs(len(sph[q]) - half), {"test": "count-relation", "q": q})
    out.info = {"counts": counts, "note": "count relation is an enumeration observation"}


def _degeneracy(spec: CheckSpec, out: _Outcome):
    """Level enumeration agrees with a brute-force scan. scope: system, qmax."""
    P = spec.params
    system = spec.scope.get("system", "parabolic")
    for q in range(spec.scope.get("qmax", 6) + 1):
        fast = set(states(P.n, system, q))
        slow = set(brute_force_level(P.n, system, q))
        out.add(len(fast ^ slow), {"q": q, "system": system})


# -- generator decomposition --------------------------------------------------------


def _decomposition(spec: CheckSpec, out: _Outcome):
    """Every gauged operator re-composes exactly from its generator witness. scope: qmax."""
    P = spec.params
    gens = parabolic_generators(P.n)
    G = parabolic_gauge_vars(P.n)
    seen = set()
    example = None
    for qn in states_up_to(P.n, "parabolic", spec.scope.get("qmax", 2)):
        rec = spectrum(P, qn)
        key = tuple(sorted(rec.m.items())) + (rec.sqrt_minus_2E,)
        if key in seen:
            continue
        seen.add(key)
        g = family("gauged", P, spec.mutation, state=rec)
        wit = {}
        for name, op in g.as_dict().items():
            w = decompose(op, gens)
            diff = recompose(w, gens, G) - op
            r = max((abs(c) for t in diff.terms.values() for c in t.terms.values()), default=0)
            out.add(r, {"state": qn.label(), "operator": name})
            wit[name] = [[str(c), list(word)] for c, word in w]
        if example is None:
            example = {"state": qn.label(), "witness": wit}
    out.info = example


# -- driver ---------------------------------------------------------------------------

_RUNNERS: dict[str, Callable] = {
    "exact-eigen": _exact_eigen,
    "numeric-eigen": _numeric_eigen,
    "commutator-zero": _commutators,
    "commutator-nonzero": _commutators,
    "commutator-identity": _commutators,
    "tridiagonal": _tridiagonal,
    "spectrum-set": _spectrum_set,
    "degeneracy": _degeneracy,
    "generator-decomposition": _decomposition,
}


def run_check(spec: CheckSpec) -> CheckReport:
    """Run one check; construction errors become status 'error', never a pass."""
    t0 = time.perf_counter()
    exact = spec.kind in EXACT_KINDS or spec.scope.get("mode") == "exact"
    try:
        spec.validate()
        out = _Outcome(spec, exact, lower_bound=spec.kind == "commutator-nonzero")
        _RUNNERS[spec.kind](spec, out)
        status = out.status()
        witness = out.witness if (status == "fail" or out.lower) else out.info
        if status == "fail" and out.lower and witness is None:
            witness = {"note": "no test jet produced a nonzero residual"}
        residual = out.residual()
    except Exception as exc:  # noqa: BLE001 - any construction error is reported
        status = "error"
        residual = None
        last = traceback.extract_tb(exc.__traceback__)[-1]
        witness = {"error": f"{type(exc).__name__}: {exc}", "at": f"{last.name}:{last.lineno}"}
    params = spec.params_json() if isinstance(spec.params, ModelParams) else {}
    return CheckReport(
        name=spec.name,
        kind=spec.kind,
        params=params,
        seed=spec.seed,
        tolerance=spec.tolerance,
        status=status,
        worst_residual=residual,
        witness=_jsonable(witness),
        wall_ms=round((time.perf_counter() - t0) * 1000, 3),
    )
