"""Closed forms of genus layers in the renormalized coordinates.

Genus zero collapses to a single action-like function of the I-coordinates,

    F_{0,N} = N * A,
    A = sum_{k>=0} (-1)^k/(k+1)! (I_k + delta_{k,1}) I_0^{k+1}
      = -I_0^2/2 + sum_{k>=0} (-1)^k I_k I_0^{k+1}/(k+1)!,

genus one to F_{1,N} = (N^2/2) log(1/(1 - I_1)), and every higher genus to a
finite sum over partitions nu of 2g - 2 (lambda = nu shifted up by two):

    F_{g,N} = sum_lambda V(lambda, g)/aut(lambda)
              * prod_i I_{lambda_i - 1}/(lambda_i - 1)!
              * (1 - I_1)^{-|lambda|/2}.

Two equivalent genus-zero partition sums over ordered tuples provide
independent cross-checks, as does the stationarity dA/dI_0 = t_0 - I_0.
The half-integer powers disappear in the q_n coordinates: ``q_rewrite``
turns a structural form into a plain q-polynomial, exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..correlators import CorrelatorEngine, default_engine
from ..exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    automorphism_factor,
    partitions_of,
    series_pow,
)
from ..freeenergy import FreeEnergySeries, assemble
from ..verify import VerificationReport
from .frame import ICoordinateFrame, build_frame
from .iexpr import IExpression, QPolynomial, StructuralForm

__all__ = [
    "action_A",
    "action_A_expression",
    "action_A_stationarity",
    "f0_closed_form",
    "q_rewrite",
    "structural_FgN",
    "structural_expression",
]


def action_A_expression(truncation: int) -> IExpression:
    """The action A as a finite IExpression, exact through weight D.

    The term (I_k + delta_{k,1}) I_0^{k+1} has minimum weight 2k + 2, so
    k <= D/2 - 1 suffices.
    """
    terms: dict = {}
    for k in range(0, truncation // 2):
        coeff = Fraction((-1) ** k, factorial(k + 1))
        key = (_imono_times_power(k, k + 1), 0)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        if k == 1:
            pure = (((0, 2),), 0)
            terms[pure] = terms.get(pure, Fraction(0)) + coeff
    return IExpression(terms)


def _imono_times_power(k: int, i0_power: int) -> tuple[tuple[int, int], ...]:
    if k == 0:
        return ((0, i0_power + 1),)
    if i0_power == 0:
        return ((k, 1),)
    return tuple(sorted(((0, i0_power), (k, 1))))


def action_A_stationarity(truncation: int) -> IExpression:
    """dA/dI_0 in the stationarity sense: the power factors are
    differentiated while the coordinate slots I_k are held fixed,

        sum_{k>=0} (-1)^k/k! (I_k + delta_{k,1}) I_0^k,

    which must expand to t_0 - I_0.  (The unrestricted derivative of the
    merged expression instead differentiates the k = 0 slot too, adding
    I_0 and giving exactly t_0; both identities are checked.)
    """
    terms: dict = {}
    for k in range(0, (truncation + 1) // 2):
        coeff = Fraction((-1) ** k, factorial(k))
        key = (_imono_times_power(k, k), 0)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        if k == 1:
            pure = (((0, 1),), 0)
            terms[pure] = terms.get(pure, Fraction(0)) + coeff
    return IExpression(terms)


def action_A(frame: ICoordinateFrame, truncation: int | None = None) -> TruncatedSeries:
    """A expanded in the t-couplings."""
    D = frame.truncation if truncation is None else truncation
    return action_A_expression(D).expand(frame, D)


def structural_expression(genus: int, engine: CorrelatorEngine) -> IExpression:
    """The exact finite I-expression of F_{g,N} for g >= 2."""
    if genus < 2:
        raise ValueError("the structural sum applies to genus >= 2")
    terms: dict = {}
    for nu in partitions_of(2 * genus - 2):
        lam = tuple(sorted((j + 2 for j in nu), reverse=True))
        value = engine.thin(lam, genus)
        coeff = value * Fraction(1, automorphism_factor(lam))
        for a in lam:
            coeff = coeff * Fraction(1, factorial(a - 1))
        counts: dict[int, int] = {}
        for a in lam:
            counts[a - 1] = counts.get(a - 1, 0) + 1
        key = (tuple(sorted(counts.items())), -sum(lam))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return IExpression(terms)


def structural_FgN(
    genus: int,
    engine: CorrelatorEngine | None = None,
    free_energy: FreeEnergySeries | None = None,
    frame: ICoordinateFrame | None = None,
) -> tuple[StructuralForm, VerificationReport]:
    """Closed form of F_{g,N}, verified against the assembled genus layer."""
    if engine is None:
        engine = default_engine()
    if free_energy is None:
        free_energy = assemble(max(2 * genus + 2, 8), engine)
    if frame is None:
        frame = build_frame(free_energy.truncation)

    if genus == 0:
        form = StructuralForm(
            0,
            expression=action_A_expression(free_energy.truncation).scale(
                GenusPolynomial.variable("N")
            ),
        )
    elif genus == 1:
        form = StructuralForm(
            1, log_coefficient=GenusPolynomial("N", {2: Fraction(1, 2)})
        )
    else:
        form = StructuralForm(genus, expression=structural_expression(genus, engine))

    report = VerificationReport(f"structural_FgN(genus={genus})")
    expanded = form.expand(frame)
    direct = free_energy.genus_layer_t(genus)
    report.record(
        expanded == direct,
        f"structural form of F_{{{genus},N}} does not expand to the "
        f"assembled layer at weight {free_energy.truncation}",
    )
    return form, report


def q_rewrite(form: StructuralForm) -> QPolynomial:
    """Rewrite a genus >= 2 structural form as an exact polynomial in q_n.

    Substituting I_{a-1} = q_{a-2} (1 - I_1)^{a/2} must cancel the prefactor
    (1 - I_1)^{-|lambda|/2} exactly; the result is checked by substituting
    back.
    """
    if form.log_coefficient:
        raise ValueError("log terms have no q-polynomial form")
    q_terms: dict = {}
    for (monomial, half), coeff in form.expression.terms.items():
        if any(index < 2 for index, _ in monomial):
            raise ValueError("q-rewrite needs every I-index >= 2")
        required = -sum(exp * (index + 1) for index, exp in monomial)
        if required != half:
            raise ValueError(
                f"(1-I_1) exponent {Fraction(half, 2)} does not cancel "
                f"against the I-monomial {monomial}"
            )
        q_mono = tuple((index - 1, exp) for index, exp in monomial)
        q_terms[q_mono] = q_terms.get(q_mono, Fraction(0)) + coeff
    result = QPolynomial(q_terms)
    if result.to_iexpression() != form.expression:
        raise AssertionError("q_rewrite back-substitution failed")
    return result


def f0_closed_form(
    free_energy: FreeEnergySeries,
    frame: ICoordinateFrame | None = None,
) -> tuple[StructuralForm, VerificationReport]:
    """F_{0,N} = N A with six independent consistency checks.

    1. the two printed forms of A agree as finite I-expressions;
    2. N A expands to the assembled genus-zero layer in t-couplings;
    3. the stationarity dA/dI_0 = t_0 - I_0 holds (slots held fixed);
    4. the unrestricted derivative equals t_0;
    5. the ordered-tuple partition sum reproduces the layer in g-couplings;
    6. so does its variant with g_2 resummed into (1 - g_2)^{-k}.
    """
    D = free_energy.truncation
    if frame is None:
        frame = build_frame(D)
    report = VerificationReport("f0_closed_form")

    expression = action_A_expression(D)
    alternative: dict = {(((0, 2),), 0): Fraction(-1, 2)}
    for k in range(0, D // 2):
        key = (_imono_times_power(k, k + 1), 0)
        alternative[key] = alternative.get(key, Fraction(0)) + Fraction(
            (-1) ** k, factorial(k + 1)
        )
    report.record(
        expression == IExpression(alternative),
        "the two forms of the action A disagree",
    )

    a_series = expression.expand(frame, D)
    layer_t = free_energy.genus_layer_t(0)
    report.record(
        a_series.scale(GenusPolynomial.variable("N")) == layer_t,
        "N*A does not expand to the genus-zero layer",
    )

    stationarity = action_A_stationarity(D).expand(frame, D)
    target = TruncatedSeries.symbol(D, "t_0") - frame.I(0)
    report.record(stationarity == target, "dA/dI_0 != t_0 - I_0")

    derivative = expression.derivative_I0().expand(frame, D)
    report.record(
        derivative == TruncatedSeries.symbol(D, "t_0"),
        "unrestricted dA/dI_0 != t_0",
    )

    layer_g = free_energy.genus_layer(0)
    report.record(
        _partition_sum(D) == layer_g,
        "ordered-tuple partition sum does not match the genus-zero layer",
    )
    report.record(
        _partition_sum_resummed(D) == layer_g,
        "resummed partition sum does not match the genus-zero layer",
    )

    form = StructuralForm(0, expression=expression.scale(GenusPolynomial.variable("N")))
    return form, report


def _partition_sum(truncation: int) -> TruncatedSeries:
    """N sum_k 1/(k(k+1)) sum_{j_1+...+j_{k+1}=2k} g_{j_1} ... g_{j_{k+1}}."""
    n_poly = GenusPolynomial.variable("N")
    terms: dict = {}
    for k in range(1, truncation // 2 + 1):
        for lam in partitions_of(2 * k):
            if len(lam) != k + 1:
                continue
            orderings = Fraction(
                factorial(k + 1), automorphism_factor(lam)
            )
            coeff = orderings * Fraction(1, k * (k + 1))
            counts: dict[int, int] = {}
            for a in lam:
                counts[a] = counts.get(a, 0) + 1
            monomial = tuple((f"g_{a}", counts[a]) for a in sorted(counts))
            terms[monomial] = coeff * n_poly
    return TruncatedSeries(truncation, terms)


def _partition_sum_resummed(truncation: int) -> TruncatedSeries:
    """The same sum restricted to j_i != 2, times (1 - g_2)^{-k}."""
    n_poly = GenusPolynomial.variable("N")
    one_minus_g2 = TruncatedSeries.one(truncation) - TruncatedSeries.symbol(
        truncation, "g_2"
    )
    total = TruncatedSeries.zero(truncation)
    for k in range(1, truncation // 2 + 1):
        terms: dict = {}
        for lam in partitions_of(2 * k):
            if len(lam) != k + 1 or 2 in lam:
                continue
            orderings = Fraction(factorial(k + 1), automorphism_factor(lam))
            coeff = orderings * Fraction(1, k * (k + 1))
            counts: dict[int, int] = {}
            for a in lam:
                counts[a] = counts.get(a, 0) + 1
            monomial = tuple((f"g_{a}", counts[a]) for a in sorted(counts))
            terms[monomial] = coeff
        if not terms:
            continue
        layer = TruncatedSeries(truncation, terms)
        total = total + layer * series_pow(one_minus_g2, -k)
    return total.scale(n_poly)
