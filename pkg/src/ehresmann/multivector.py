"""Decomposable multivector representatives of connections.

A connection determines (up to a nonvanishing factor) the wedge of its
horizontal frame; this module builds that representative, contracts it with
m-forms, and decides transversality and class equivalence at probe points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .bundle import BundleChart
from .connection import EhresmannConnection, VectorField, horizontal_frame
from .errors import ChartError, EhresmannError

__all__ = [
    "Multivector",
    "MForm",
    "base_volume_form",
    "representative",
    "contract",
    "is_transverse",
    "same_class",
]


@dataclass(frozen=True)
class Multivector:
    """Ordered factors X_1, ..., X_m of a decomposable m-multivector
    X_1 ^ ... ^ X_m on the bundle chart."""

    chart: BundleChart
    factors: tuple  # m VectorFields

    def __post_init__(self):
        if len(self.factors) != self.chart.m:
            raise ChartError(
                f"need {self.chart.m} factors, got {len(self.factors)}"
            )
        for factor in self.factors:
            if factor.chart != self.chart:
                raise ChartError("factors live on different charts")


@dataclass(frozen=True)
class MForm:
    """m-form as a sum of coefficient * (dz^{a_1} ^ ... ^ dz^{a_m}) terms;
    coordinates are named, so dx's and dy's mix freely."""

    chart: BundleChart
    terms: tuple  # ((coord names tuple), Expr) pairs

    def __post_init__(self):
        names = set(self.chart.coordinate_names)
        for coords, _ in self.terms:
            if len(coords) != self.chart.m:
                raise ChartError(f"form degree must be {self.chart.m}")
            unknown = set(coords) - names
            if unknown:
                raise ChartError(f"unknown coordinates in form: {sorted(unknown)}")


def base_volume_form(chart: BundleChart) -> MForm:
    """Pullback of the standard base volume dx^1 ^ ... ^ dx^m."""
    return MForm(chart, ((tuple(chart.base_names), ex.ONE),))


def representative(connection: EhresmannConnection) -> Multivector:
    """Wedge of the horizontal frame; spans the same distribution as the
    frame itself."""
    return Multivector(connection.chart, tuple(horizontal_frame(connection)))


def _component(field: VectorField, name):
    chart = field.chart
    if name in chart.base_names:
        return field.base_components[chart.base_names.index(name)]
    return field.fiber_components[chart.fiber_names.index(name)]


def _symbolic_det(matrix):
    """Leibniz expansion; matrices here are at most m x m with m small."""
    size = len(matrix)
    terms = []
    for perm in itertools.permutations(range(size)):
        sign = 1.0
        for a in range(size):
            for b in range(a + 1, size):
                if perm[a] > perm[b]:
                    sign = -sign
        factors = [ex.Const(sign)] + [matrix[r][perm[r]] for r in range(size)]
        terms.append(ex.Prod(tuple(factors)))
    return ex.normalize(ex.Sum(tuple(terms)))


def contract(mv: Multivector, omega: MForm) -> ex.Expr:
    """Pairing of the decomposable multivector with an m-form: for each form
    term, the determinant of factor components along its coordinates."""
    if mv.chart != omega.chart:
        raise ChartError("multivector and form live on different charts")
    total = []
    for coords, coefficient in omega.terms:
        matrix = [
            [_component(factor, name) for factor in mv.factors]
            for name in coords
        ]
        total.append(coefficient * _symbolic_det(matrix))
    return ex.normalize(ex.Sum(tuple(total)))


def _probe_bindings(chart, probe):
    rng = probe.rng()
    names = chart.coordinate_names
    for _ in range(probe.points):
        yield {name: rng.uniform(probe.low, probe.high) for name in names}


def is_transverse(mv: Multivector, probe: ex.ProbeConfig = ex.DEFAULT_PROBE) -> bool:
    """True iff the pairing with the pulled-back base volume is nonvanishing
    at every probe point (sufficient on a single chart)."""
    pairing = contract(mv, base_volume_form(mv.chart))
    normalized = ex.normalize(pairing)
    if isinstance(normalized, ex.Const):
        return abs(normalized.value) > probe.tol
    for bindings in _probe_bindings(mv.chart, probe):
        try:
            value, scale = ex._evaluate_scaled(normalized, bindings)
        except ex.DomainError:
            continue
        if abs(value) <= probe.tol * (1.0 + scale):
            return False
    return True


def _factor_matrix(mv: Multivector, bindings):
    chart = mv.chart
    rows = []
    for factor in mv.factors:
        rows.append([ex.evaluate(c, bindings) for c in factor.components])
    return np.array(rows)


def same_class(
    mv1: Multivector,
    mv2: Multivector,
    probe: ex.ProbeConfig = ex.DEFAULT_PROBE,
) -> bool:
    """Probe-level class equivalence: equal spans at every probe point and a
    proportionality factor between the wedges that never vanishes and keeps
    a constant sign."""
    if mv1.chart != mv2.chart:
        raise ChartError("multivectors live on different charts")
    chart = mv1.chart
    m = chart.m
    columns = None
    previous_sign = 0
    for bindings in _probe_bindings(chart, probe):
        A = _factor_matrix(mv1, bindings)
        B = _factor_matrix(mv2, bindings)
        if np.linalg.matrix_rank(A, tol=1e-10) < m or np.linalg.matrix_rank(B, tol=1e-10) < m:
            raise EhresmannError("rank-deficient multivector representative")
        stacked = np.vstack([A, B])
        if np.linalg.matrix_rank(stacked, tol=1e-8) > m:
            return False
        if columns is None:
            # fix, once, an m-column minor where the first wedge is robustly
            # nonsingular; its ratio tracks the proportionality factor
            best, best_value = None, 0.0
            for cols in itertools.combinations(range(A.shape[1]), m):
                value = abs(np.linalg.det(A[:, cols]))
                if value > best_value:
                    best, best_value = cols, value
            columns = best
        det1 = np.linalg.det(A[:, columns])
        det2 = np.linalg.det(B[:, columns])
        if abs(det1) < 1e-12:
            raise EhresmannError("degenerate minor while comparing classes")
        ratio = det2 / det1
        if abs(ratio) <= probe.tol * (1.0 + abs(det1) + abs(det2)):
            return False
        sign = 1 if ratio > 0 else -1
        if previous_sign and sign != previous_sign:
            return False
        previous_sign = sign
    return True
