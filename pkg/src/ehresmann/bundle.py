"""Trivial bundle charts, sections, and first/second jet prolongation.

Everything lives in a single adapted chart of a product bundle: base
coordinates x1..xm, fiber coordinates y1..yn, induced jet coordinates
y<i>_<mu>.  The chart carries an explicit coordinate box; numeric routines
refuse to leave it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import expr as ex
from .errors import ChartError

DEFAULT_BOX_HALF_WIDTH = 10.0


def default_names(prefix, count):
    return tuple(f"{prefix}{k}" for k in range(1, count + 1))


def jet_names(base_names, fiber_names):
    """Jet coordinate names y<i>_<mu> in (i outer, mu inner) order."""
    return tuple(
        f"{fiber}_{mu}"
        for fiber in fiber_names
        for mu in range(1, len(base_names) + 1)
    )


@dataclass(frozen=True)
class BundleChart:
    """Adapted chart of a trivial bundle E = M x F.

    box maps coordinate name -> (low, high); coordinates without an entry
    default to a symmetric box of half-width 10.
    """

    base_names: tuple
    fiber_names: tuple
    box: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.base_names or not self.fiber_names:
            raise ChartError("chart needs at least one base and one fiber coordinate")
        names = tuple(self.base_names) + tuple(self.fiber_names)
        if len(set(names)) != len(names):
            raise ChartError("coordinate names must be distinct")
        for name in self.box:
            if name not in names:
                raise ChartError(f"box bound for unknown coordinate {name!r}")

    @classmethod
    def standard(cls, m, n, box=None):
        return cls(default_names("x", m), default_names("y", n), box or {})

    @property
    def m(self):
        return len(self.base_names)

    @property
    def n(self):
        return len(self.fiber_names)

    @property
    def coordinate_names(self):
        return tuple(self.base_names) + tuple(self.fiber_names)

    def bounds(self, name):
        return self.box.get(name, (-DEFAULT_BOX_HALF_WIDTH, DEFAULT_BOX_HALF_WIDTH))

    def contains(self, bindings):
        for name, value in bindings.items():
            low, high = self.bounds(name)
            if not (low <= value <= high):
                return False
        return True

    def check_expression(self, e, allowed, what):
        extra = ex.free_variables(e) - set(allowed)
        if extra:
            raise ChartError(
                f"{what} uses coordinates {sorted(extra)} outside {sorted(allowed)}"
            )


@dataclass(frozen=True)
class JetChart:
    """First-jet chart over a BundleChart; coordinates (x, y, y_mu).
    For second jets the extra names (z_nu, z_numu) are derived on demand."""

    bundle: BundleChart

    @property
    def jet_coordinate_names(self):
        return jet_names(self.bundle.base_names, self.bundle.fiber_names)

    @property
    def coordinate_names(self):
        return self.bundle.coordinate_names + self.jet_coordinate_names

    def second_jet_names(self):
        """Names (z^i_nu, z^i_{nu mu}) for the J1J1 chart, (i outer, nu, mu
        inner) row-major."""
        m = self.bundle.m
        z1 = tuple(
            f"z{fiber[1:]}_{nu}"
            for fiber in self.bundle.fiber_names
            for nu in range(1, m + 1)
        )
        z2 = tuple(
            f"z{fiber[1:]}_{nu}_{mu}"
            for fiber in self.bundle.fiber_names
            for nu in range(1, m + 1)
            for mu in range(1, m + 1)
        )
        return z1, z2


@dataclass(frozen=True)
class Section:
    """Section of the bundle: y^i = phi^i(x)."""

    chart: BundleChart
    components: tuple  # n expressions in the base coordinates

    def __post_init__(self):
        if len(self.components) != self.chart.n:
            raise ChartError(
                f"section needs {self.chart.n} components, got {len(self.components)}"
            )
        for i, comp in enumerate(self.components):
            self.chart.check_expression(
                comp, self.chart.base_names, f"section component {i + 1}"
            )

    def evaluate(self, base_point):
        bindings = dict(zip(self.chart.base_names, base_point))
        return [ex.evaluate(comp, bindings) for comp in self.components]


@dataclass(frozen=True)
class JetSection:
    """Section of J1(pi) -> M: components (phi^i, gamma^i_mu), all functions
    of the base coordinates.  gamma is stored as an n x m table."""

    chart: BundleChart
    components: tuple  # n expressions phi^i
    jet_components: tuple  # n x m table gamma^i_mu

    def __post_init__(self):
        chart = self.chart
        if len(self.components) != chart.n:
            raise ChartError("wrong number of fiber components")
        if len(self.jet_components) != chart.n or any(
            len(row) != chart.m for row in self.jet_components
        ):
            raise ChartError(f"jet component table must be {chart.n} x {chart.m}")
        for i, comp in enumerate(self.components):
            chart.check_expression(comp, chart.base_names, f"component {i + 1}")
        for i, row in enumerate(self.jet_components):
            for mu, comp in enumerate(row):
                chart.check_expression(
                    comp, chart.base_names, f"jet component ({i + 1},{mu + 1})"
                )

    def base_section(self):
        """The underlying section of the bundle (forget the jet part)."""
        return Section(self.chart, self.components)


def prolong_section(phi: Section) -> JetSection:
    """Canonical first prolongation: append all partial derivatives of the
    section components."""
    chart = phi.chart
    jet = tuple(
        tuple(ex.differentiate(comp, x) for x in chart.base_names)
        for comp in phi.components
    )
    return JetSection(chart, phi.components, jet)


def prolong_jet_section(psi: JetSection):
    """Second prolongation of a jet section: the tuple of component tables
    (f^i, g^i_nu, df^i/dx^nu, dg^i_mu/dx^nu) ordered as the second-jet
    chart (i outer, indices inner, row-major)."""
    chart = psi.chart
    df = tuple(
        tuple(ex.differentiate(comp, x) for x in chart.base_names)
        for comp in psi.components
    )
    dg = tuple(
        tuple(
            tuple(ex.differentiate(psi.jet_components[i][mu], x) for x in chart.base_names)
            for mu in range(chart.m)
        )
        for i in range(chart.n)
    )
    return psi.components, psi.jet_components, df, dg


def holonomic_check(psi: JetSection, probe: ex.ProbeConfig = ex.DEFAULT_PROBE) -> bool:
    """True iff the jet part equals the derivative of the fiber part, i.e.
    psi is the prolongation of its own projection."""
    return all(
        ex.is_zero(psi.jet_components[i][mu] - ex.differentiate(psi.components[i], x), probe)
        for i in range(psi.chart.n)
        for mu, x in enumerate(psi.chart.base_names)
    )
