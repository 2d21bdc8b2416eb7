"""Coefficient profiles: the functions a1(t), lambda(t) and everything derived from them.

A profile owns two sympy expressions in the energy density ``t``.  All other
coefficients of the lifted structure follow algebraically:

    a2 = 1/a1,                 b2 = -b1 / (a1 (a1 + 2t b1))
    b1 = (a1 a1' - c) / (a1 - 2t a1')          (integrability)
    c1 = lambda a1,            c2 = lambda a2
    d1 = lambda b1 + mu (a1 + 2t b1),  d2 = lambda b2 + mu (a2 + 2t b2)
    mu = lambda'                               (closed fundamental form)

``b1`` and ``mu`` may be overridden to build deliberately non-integrable or
non-Kaehler structures for negative tests.  Derivatives are exact: the
derived coefficients are differentiated once in terms of abstract a1(t),
lambda(t) (and b1, mu when overridden) and fed with each profile's jets.
"""
import enum
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache

import sympy as sp

from . import _fd
from .exceptions import DomainError, InvalidCaseParams, SingularProfile

T = sp.Symbol("t", real=True)

EPS_SING = 1e-8


class Case(enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        aliases = {"case1": cls.CASE1, "1": cls.CASE1, "case2": cls.CASE2, "2": cls.CASE2,
                   "case3": cls.CASE3, "3": cls.CASE3, "custom": cls.CUSTOM}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown case tag {value!r}") from None


def _sym(expr, **params):
    """Parse ``expr`` (string, number or sympy expression) as a function of t."""
    if isinstance(expr, sp.Basic):
        e = expr
    else:
        local = {"t": T, "sqrt": sp.sqrt, "exp": sp.exp, "log": sp.log}
        local.update({k: sp.Float(v) for k, v in params.items() if v is not None})
        e = sp.sympify(expr, locals=local)
    free = e.free_symbols - {T}
    if free:
        raise ValueError(f"expression {expr!r} has unbound symbols {sorted(map(str, free))}")
    return e


@dataclass(frozen=True)
class DerivedCoefficients:
    t: float
    a1: float
    a2: float
    b1: float
    b2: float
    c1: float
    c2: float
    d1: float
    d2: float
    lam: float
    mu: float
    b1_p: float
    c1_p: float
    c2_p: float
    d1_p: float
    d2_p: float
    # second t-derivatives, consumed by the vertical derivatives of the
    # connection blocks
    c1_pp: float = 0.0
    c2_pp: float = 0.0
    d1_pp: float = 0.0
    d2_pp: float = 0.0
    # the essential pair with derivatives
    a1_p: float = 0.0
    a1_pp: float = 0.0
    lam_p: float = 0.0
    lam_pp: float = 0.0


_DERIVED = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "lam", "mu")

_C = sp.Symbol("c", real=True)
_A = sp.symbols("a0:4", real=True)
_L = sp.symbols("l0:4", real=True)
_B = sp.symbols("b0:3", real=True)
_M = sp.symbols("m0:3", real=True)


@lru_cache(maxsize=None)
def _generic_derived(b1_given, mu_given):
    """Compiled map (t, c, a1 jet, lambda jet, b1 jet, mu jet) -> derived values and two derivatives."""
    a = sp.Function("a")(T)
    lam = sp.Function("l")(T)
    bf = sp.Function("b")(T)
    mf = sp.Function("m")(T)
    a1p = sp.diff(a, T)
    b1 = bf if b1_given else (a * a1p - _C) / (a - 2 * T * a1p)
    mu = mf if mu_given else sp.diff(lam, T)
    a2 = 1 / a
    b2 = -b1 / (a * (a + 2 * T * b1))
    sym = dict(a1=a, a2=a2, b1=b1, b2=b2, c1=lam * a, c2=lam * a2,
               d1=lam * b1 + mu * (a + 2 * T * b1), d2=lam * b2 + mu * (a2 + 2 * T * b2),
               lam=lam, mu=mu)
    subs = {}
    for f, syms in ((a, _A), (lam, _L), (bf, _B), (mf, _M)):
        for m in range(len(syms) - 1, 0, -1):
            subs[sp.Derivative(f, (T, m))] = syms[m]
        subs[f] = syms[0]
    exprs = []
    for key in _DERIVED:
        e = sym[key]
        exprs += [e.subs(subs), sp.diff(e, T).subs(subs), sp.diff(e, T, 2).subs(subs)]
    return sp.lambdify((T, _C, *_A, *_L, *_B, *_M), exprs, modules="math", cse=True)


@dataclass(frozen=True)
class CoefficientProfile:
    """The essential pair (a1, lambda) plus the base curvature ``c``.

    ``b1_expr``/``mu_expr`` are ``None`` for structures built by the
    integrability and closedness conditions; set them to break either one.
    ``params`` holds case constants such as ``B`` and ``k``.  The constant
    ``k`` is local to its case family: Case1, Case2 and Case3 each use it
    with an unrelated meaning.
    """

    a1_expr: sp.Expr
    lam_expr: sp.Expr
    c: float
    case_tag: Case = Case.CUSTOM
    params: dict = field(default_factory=dict)
    b1_expr: sp.Expr = None
    mu_expr: sp.Expr = None
    name: str = ""
    t_min: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "a1_expr", _sym(self.a1_expr))
        object.__setattr__(self, "lam_expr", _sym(self.lam_expr))
        if self.b1_expr is not None:
            object.__setattr__(self, "b1_expr", _sym(self.b1_expr))
        if self.mu_expr is not None:
            object.__setattr__(self, "mu_expr", _sym(self.mu_expr))
        if not self.name:
            object.__setattr__(self, "name", self.case_tag.value)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    @property
    def integrable_by_construction(self):
        return self.b1_expr is None

    @property
    def kahler_by_construction(self):
        return self.mu_expr is None

    # -- symbolic layer ------------------------------------------------------

    @cached_property
    def symbolic(self):
        """Sympy expressions of all derived coefficients (functions of t)."""
        c = sp.Float(self.c) if self.c != int(self.c) else sp.Integer(int(self.c))
        a1, lam = self.a1_expr, self.lam_expr
        a1p = sp.diff(a1, T)
        b1 = (a1 * a1p - c) / (a1 - 2 * T * a1p) if self.b1_expr is None else self.b1_expr
        mu = sp.diff(lam, T) if self.mu_expr is None else self.mu_expr
        a2 = 1 / a1
        b2 = -b1 / (a1 * (a1 + 2 * T * b1))
        c1 = lam * a1
        c2 = lam * a2
        d1 = lam * b1 + mu * (a1 + 2 * T * b1)
        d2 = lam * b2 + mu * (a2 + 2 * T * b2)
        return dict(a1=a1, a2=a2, b1=b1, b2=b2, c1=c1, c2=c2, d1=d1, d2=d2, lam=lam, mu=mu)

    @cached_property
    def _base_fn(self):
        # jets: a1 (0..3), lambda (0..3), then b1 (0..2) and mu (0..2) when overridden
        a1, lam = self.a1_expr, self.lam_expr
        exprs = [sp.diff(a1, T, m) for m in range(4)] + [sp.diff(lam, T, m) for m in range(4)]
        for e in (self.b1_expr, self.mu_expr):
            if e is not None:
                exprs += [sp.diff(e, T, m) for m in range(3)]
        return sp.lambdify(T, exprs, modules="math", cse=True)

    def _derived_fn(self, t):
        jet = self._jet(t)
        b1 = jet[8:11] if self.b1_expr is not None else [0.0] * 3
        mu = jet[-3:] if self.mu_expr is not None else [0.0] * 3
        f = _generic_derived(self.b1_expr is not None, self.mu_expr is not None)
        return f(t, self.c, *jet[:8], *b1, *mu)

    def _jet(self, t):
        try:
            return [float(v) for v in self._base_fn(float(t))]
        except (ValueError, ZeroDivisionError, OverflowError, TypeError) as exc:
            raise DomainError(f"profile {self.name!r} is not defined at t={t!r}: {exc}") from exc

    # scalar callables for a1, lambda and their first two derivatives
    def a1(self, t):
        return self._jet(t)[0]

    def a1_p(self, t):
        return self._jet(t)[1]

    def a1_pp(self, t):
        return self._jet(t)[2]

    def a1_ppp(self, t):
        return self._jet(t)[3]

    def lam(self, t):
        return self._jet(t)[4]

    def lam_p(self, t):
        return self._jet(t)[5]

    def lam_pp(self, t):
        return self._jet(t)[6]

    def lam_ppp(self, t):
        return self._jet(t)[7]


def check_singularity(P, t):
    """Raise :class:`SingularProfile` when a defining denominator is too small at ``t``.

    Returns the guarded denominators as a dict (their margins).
    """
    jet = P._jet(t)
    a1, a1p = jet[0], jet[1]
    margins = {}
    if P.b1_expr is None:
        margins["a1-2t*a1'"] = a1 - 2 * t * a1p
        margins["a1^2-2ct"] = a1 * a1 - 2 * P.c * t
    else:
        b1 = jet[8]
        margins["a1"] = a1
        margins["a1+2t*b1"] = a1 + 2 * t * b1
    for which, value in margins.items():
        if abs(value) <= EPS_SING:
            raise SingularProfile(t, which, value)
    return margins


def coefficients_at(P, t):
    """Evaluate every derived coefficient (and needed derivatives) at ``t``."""
    t = float(t)
    if t < 0:
        raise DomainError(f"energy density must be non-negative, got t={t!r}")
    check_singularity(P, t)
    jet = P._jet(t)
    try:
        vals = [float(v) for v in P._derived_fn(t)]
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"profile {P.name!r} is not defined at t={t!r}: {exc}") from exc
    d = {key: vals[3 * i: 3 * i + 3] for i, key in enumerate(_DERIVED)}
    return DerivedCoefficients(
        t=t,
        a1=d["a1"][0], a2=d["a2"][0], b1=d["b1"][0], b2=d["b2"][0],
        c1=d["c1"][0], c2=d["c2"][0], d1=d["d1"][0], d2=d["d2"][0],
        lam=d["lam"][0], mu=d["mu"][0],
        b1_p=d["b1"][1], c1_p=d["c1"][1], c2_p=d["c2"][1], d1_p=d["d1"][1], d2_p=d["d2"][1],
        c1_pp=d["c1"][2], c2_pp=d["c2"][2], d1_pp=d["d1"][2], d2_pp=d["d2"][2],
        a1_p=jet[1], a1_pp=jet[2], lam_p=jet[5], lam_pp=jet[6],
    )


# -- constructors ------------------------------------------------------------

def example_a1(c, B):
    """``B + sqrt(B^2 + 2ct)`` for c >= 0, ``B + sqrt(B^2 - 2ct)`` for c < 0."""
    s = 1 if c >= 0 else -1
    return sp.Float(B) + sp.sqrt(sp.Float(B) ** 2 + 2 * s * sp.Float(c) * T)


def custom_profile(a1, lam, c, b1=None, mu=None, name="custom", **params):
    return CoefficientProfile(
        a1_expr=_sym(a1, c=c, **params),
        lam_expr=_sym(lam, c=c, **params),
        c=c,
        case_tag=Case.CUSTOM,
        params=dict(params),
        b1_expr=None if b1 is None else _sym(b1, c=c, **params),
        mu_expr=None if mu is None else _sym(mu, c=c, **params),
        name=name,
    )


def flat_identity_profile():
    """c = 0, a1 = lambda = 1: the plain Sasaki-like structure on T*R^n."""
    return custom_profile(1, 1, c=0.0, name="flat-identity")


def make_case_profile(case, *, c, k, B=1.0, a1=None, lam=None, name=None):
    """Build one of the three Kaehler-Einstein families.

    case1: lambda = (4c/k) a1 / (a1^2 + 2ct); a1 defaults to the worked
           example B + sqrt(B^2 + 2ct) (B + sqrt(B^2 - 2ct) when c < 0).
           Requires c != 0 and c/k > 0.
    case2: lambda = k / a1 for any a1 (default: the worked example).
           Requires k > 0.
    case3: a1 = k t lambda for a supplied positive lambda (default 1).
           Requires k > 0; the zero section t = 0 is excluded.
    """
    case = Case.parse(case)
    c = float(c)
    k = float(k)
    if case is Case.CASE1:
        if c == 0:
            raise InvalidCaseParams("case1 requires c != 0")
        if not c / k > 0:
            raise InvalidCaseParams(f"case1 requires c/k > 0 (lambda > 0); got c={c}, k={k}")
        if not B > 0:
            raise InvalidCaseParams(f"case1 requires B > 0; got B={B}")
        a1_e = example_a1(c, B) if a1 is None else _sym(a1, c=c, B=B, k=k)
        lam_e = sp.Float(4 * c / k) * a1_e / (a1_e**2 + 2 * sp.Float(c) * T)
        params = dict(B=float(B), k=k)
        t_min = 0.0
    elif case is Case.CASE2:
        if not k > 0:
            raise InvalidCaseParams(f"case2 requires k > 0; got k={k}")
        a1_e = example_a1(c, B) if a1 is None else _sym(a1, c=c, B=B, k=k)
        lam_e = sp.Float(k) / a1_e
        params = dict(B=float(B), k=k)
        t_min = 0.0
    elif case is Case.CASE3:
        if not k > 0:
            raise InvalidCaseParams(f"case3 requires k > 0; got k={k}")
        lam_e = sp.Integer(1) if lam is None else _sym(lam, c=c, k=k)
        probe = float(lam_e.subs(T, 1.0)) if lam_e.free_symbols else float(lam_e)
        if not probe > 0:
            raise InvalidCaseParams("case3 requires a positive lambda")
        a1_e = sp.Float(k) * T * lam_e
        params = dict(k=k)
        t_min = 1e-12
    else:
        raise InvalidCaseParams("use custom_profile for custom profiles")
    return CoefficientProfile(
        a1_expr=a1_e, lam_expr=lam_e, c=c, case_tag=case, params=params,
        name=name or case.value, t_min=t_min,
    )


def with_b1_offset(P, offset, name=None):
    """Same profile with ``b1`` replaced by its integrable value plus ``offset``."""
    off = _sym(offset)
    base = P.symbolic["b1"] if P.b1_expr is None else P.b1_expr
    return replace(P, b1_expr=base + off, name=name or f"{P.name}+b1[{off}]",
                   case_tag=Case.CUSTOM)


def with_mu_offset(P, offset, name=None):
    """Same profile with ``mu = lambda' + offset`` (breaks d(phi) = 0 if offset != 0)."""
    off = _sym(offset)
    return replace(P, mu_expr=sp.diff(P.lam_expr, T) + off,
                   name=name or f"{P.name}+mu[{off}]", case_tag=Case.CUSTOM)


def profile_from_config(cfg):
    """Build a profile from a flat key-value mapping.

    Keys: ``case`` (case1|case2|case3|custom|flat), ``c``, ``B``, ``k``,
    ``a1``, ``lambda``, ``b1_offset``, ``mu_offset``.
    """
    cfg = {str(k).strip().lower(): v for k, v in cfg.items()}
    case = str(cfg.get("case", "custom")).strip().lower()
    num = lambda key, default=None: float(cfg[key.lower()]) if key.lower() in cfg else default
    if case in ("flat", "flat-identity", "flat_identity"):
        P = flat_identity_profile()
    elif Case.parse(case) is Case.CUSTOM:
        c = num("c", 0.0)
        extra = {k: num(k) for k in ("b", "k") if k in cfg}
        extra = {("B" if k == "b" else k): v for k, v in extra.items()}
        P = custom_profile(cfg.get("a1", "1"), cfg.get("lambda", "1"), c=c, **extra)
    else:
        P = make_case_profile(
            case, c=num("c"), k=num("k"), B=num("B", 1.0),
            a1=cfg.get("a1"), lam=cfg.get("lambda"),
        )
    if cfg.get("b1_offset") not in (None, "", "0"):
        P = with_b1_offset(P, cfg["b1_offset"])
    if cfg.get("mu_offset") not in (None, "", "0"):
        P = with_mu_offset(P, cfg["mu_offset"])
    return P


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class TValidation:
    t: float
    a1_pos: bool
    a1_2tb1_pos: bool
    lam_pos: bool
    lam_2tmu_pos: bool
    margins: dict
    error: str = ""
    zero_section: bool = False

    @property
    def ok(self):
        return not self.error and self.a1_pos and self.a1_2tb1_pos and self.lam_pos and self.lam_2tmu_pos


@dataclass(frozen=True)
class ValidationReport:
    profile: str
    records: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.records)

    @property
    def zero_section_excluded(self):
        return any(r.zero_section for r in self.records)

    def failures(self):
        return [r for r in self.records if not r.ok]


def validate_profile(P, t_grid):
    """Check the sign conditions a1 > 0, a1+2t b1 > 0, lambda > 0, lambda+2t mu > 0 on a grid.

    Never raises for evaluation failures; they are recorded per t.
    """
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ValueError("t_grid must be non-empty")
    records = []
    for t in t_grid:
        zero_section = P.case_tag is Case.CASE3 and t == 0.0
        margins = {}
        try:
            margins = check_singularity(P, t)
            d = coefficients_at(P, t)
        except (SingularProfile, DomainError) as exc:
            a1_pos = False
            try:
                a1_pos = P.a1(t) > 0
            except DomainError:
                pass
            records.append(TValidation(t, a1_pos, False, False, False, margins,
                                       error=str(exc), zero_section=zero_section))
            continue
        records.append(TValidation(
            t=t,
            a1_pos=d.a1 > 0,
            a1_2tb1_pos=d.a1 + 2 * t * d.b1 > 0,
            lam_pos=d.lam > 0,
            lam_2tmu_pos=d.lam + 2 * t * d.mu > 0,
            margins=margins,
            zero_section=zero_section,
        ))
    return ValidationReport(profile=P.name, records=tuple(records))


# -- the a1'' relation obtained from the vanishing of C_n ------------------------

def a1_second_from_cn(P, t):
    """Right-hand side of the closed form for a1'' implied by C_n = 0."""
    a1, a1p, _, _, lam, lp, lpp, _ = P._jet(t)[:8]
    den = a1**2 * lam**2 + 2 * a1**2 * lam * lp * t
    if abs(den) <= EPS_SING:
        raise SingularProfile(t, "a1^2 lambda^2 + 2 a1^2 lambda lambda' t", den)
    num = (2 * a1 * a1p**2 * lam**2 + 2 * a1**2 * a1p * lam * lp - 2 * a1**3 * lp**2
           + a1**3 * lam * lpp - 2 * a1p**3 * lam**2 * t
           - 2 * a1 * a1p**2 * lam * lp * t + 4 * a1**2 * a1p * lp**2 * t
           - 2 * a1**2 * a1p * lam * lpp * t)
    return -num / den


def derivative_consistency(P, t_grid):
    """Max relative mismatch between analytic and finite-difference derivatives.

    Returns ``(first, second)`` over a1 and lambda.
    """
    worst1 = worst2 = 0.0
    for t in t_grid:
        for f, fp, fpp in ((P.a1, P.a1_p, P.a1_pp), (P.lam, P.lam_p, P.lam_pp)):
            e1 = abs(_fd.derivative(f, t) - fp(t)) / max(1.0, abs(fp(t)))
            e2 = abs(_fd.derivative(f, t, order=2) - fpp(t)) / max(1.0, abs(fpp(t)))
            worst1, worst2 = max(worst1, e1), max(worst2, e2)
    return worst1, worst2


__all__ = [
    "Case", "CoefficientProfile", "DerivedCoefficients", "ValidationReport", "TValidation",
    "coefficients_at", "check_singularity", "make_case_profile", "custom_profile",
    "flat_identity_profile", "with_b1_offset", "with_mu_offset", "profile_from_config",
    "validate_profile", "a1_second_from_cn", "derivative_consistency", "example_a1",
    "EPS_SING", "T",
]
