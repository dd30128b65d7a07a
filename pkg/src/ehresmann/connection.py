"""Connections on a trivial bundle given by their coefficient table.

A connection is stored as the n x m table Gamma^i_mu(x, y); the horizontal
distribution, the splitting of vector fields and 1-forms, the curvature and
the integral-section machinery are all derived from that table.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expr as ex
from .bundle import BundleChart, Section
from .errors import ChartError, NotIntegrableError, OutsideChartError

__all__ = [
    "EhresmannConnection",
    "VectorField",
    "OneForm",
    "CurvatureTensor",
    "horizontal_frame",
    "split_vector_field",
    "split_one_form",
    "curvature",
    "is_integrable",
    "integral_section",
    "integral_section_residual",
    "add_vertical",
]


def _check_table(chart, table, rows, cols, allowed, what):
    if len(table) != rows or any(len(row) != cols for row in table):
        raise ChartError(f"{what} table must be {rows} x {cols}")
    for i, row in enumerate(table):
        for j, entry in enumerate(row):
            chart.check_expression(entry, allowed, f"{what}[{i + 1}][{j + 1}]")


@dataclass(frozen=True)
class EhresmannConnection:
    """Coefficient table Gamma^i_mu over the chart coordinates (x, y)."""

    chart: BundleChart
    gamma: tuple  # n x m table of Expr

    def __post_init__(self):
        _check_table(
            self.chart, self.gamma, self.chart.n, self.chart.m,
            self.chart.coordinate_names, "Gamma",
        )

    def coefficient(self, i, mu):
        """Gamma^i_mu with zero-based indices."""
        return self.gamma[i][mu]

    @classmethod
    def flat(cls, chart):
        return cls(chart, tuple(tuple(ex.ZERO for _ in range(chart.m)) for _ in range(chart.n)))


@dataclass(frozen=True)
class VectorField:
    """X = f^mu d/dx^mu + g^i d/dy^i with Expr components over (x, y)."""

    chart: BundleChart
    base_components: tuple  # length m
    fiber_components: tuple  # length n

    def __post_init__(self):
        chart = self.chart
        if len(self.base_components) != chart.m or len(self.fiber_components) != chart.n:
            raise ChartError("vector field needs m base and n fiber components")
        for comp in self.base_components + self.fiber_components:
            chart.check_expression(comp, chart.coordinate_names, "vector field component")

    @property
    def components(self):
        return self.base_components + self.fiber_components

    def __add__(self, other):
        _same_chart(self, other)
        return VectorField(
            self.chart,
            tuple(a + b for a, b in zip(self.base_components, other.base_components)),
            tuple(a + b for a, b in zip(self.fiber_components, other.fiber_components)),
        )

    def scale(self, factor):
        factor = factor if isinstance(factor, ex.Expr) else ex.Const(float(factor))
        return VectorField(
            self.chart,
            tuple(factor * c for c in self.base_components),
            tuple(factor * c for c in self.fiber_components),
        )


@dataclass(frozen=True)
class OneForm:
    """alpha = F_mu dx^mu + G_i dy^i with Expr components over (x, y)."""

    chart: BundleChart
    base_components: tuple  # length m
    fiber_components: tuple  # length n

    def __post_init__(self):
        chart = self.chart
        if len(self.base_components) != chart.m or len(self.fiber_components) != chart.n:
            raise ChartError("one-form needs m base and n fiber components")
        for comp in self.base_components + self.fiber_components:
            chart.check_expression(comp, chart.coordinate_names, "one-form component")

    @property
    def components(self):
        return self.base_components + self.fiber_components

    def __add__(self, other):
        _same_chart(self, other)
        return OneForm(
            self.chart,
            tuple(a + b for a, b in zip(self.base_components, other.base_components)),
            tuple(a + b for a, b in zip(self.fiber_components, other.fiber_components)),
        )


@dataclass(frozen=True)
class CurvatureTensor:
    """Antisymmetric coefficients R^j_{mu nu}, stored for mu < nu.

    The stored coefficient is the bracketed factor of the local curvature
    expression; the 1/2 prefactor belongs to the wedge-basis convention and
    is folded into the (dx^mu ^ dx^nu) basis.
    """

    chart: BundleChart
    components: dict  # (j, mu, nu) with mu < nu -> Expr (zero-based)

    def coefficient(self, j, mu, nu):
        """R^j_{mu nu} for any index order (antisymmetric by construction)."""
        if mu == nu:
            return ex.ZERO
        if mu < nu:
            return self.components[(j, mu, nu)]
        return ex.Neg(self.components[(j, nu, mu)])

    def entries(self):
        """Stored (j, mu, nu, expr) tuples with mu < nu."""
        for (j, mu, nu), value in sorted(self.components.items()):
            yield j, mu, nu, value


def _same_chart(a, b):
    if a.chart != b.chart:
        raise ChartError("objects live on different charts")


def horizontal_frame(connection: EhresmannConnection):
    """The m vector fields d/dx^mu + Gamma^i_mu d/dy^i spanning the
    horizontal subbundle."""
    chart = connection.chart
    frame = []
    for mu in range(chart.m):
        base = tuple(ex.ONE if nu == mu else ex.ZERO for nu in range(chart.m))
        fiber = tuple(connection.gamma[i][mu] for i in range(chart.n))
        frame.append(VectorField(chart, base, fiber))
    return frame


def split_vector_field(connection: EhresmannConnection, X: VectorField):
    """Horizontal/vertical decomposition X = X^H + X^V."""
    _same_chart(connection, X)
    chart = connection.chart
    f = X.base_components
    horizontal_fiber = tuple(
        ex.normalize(
            ex.Sum(tuple(f[mu] * connection.gamma[i][mu] for mu in range(chart.m)))
        )
        for i in range(chart.n)
    )
    horizontal = VectorField(chart, f, horizontal_fiber)
    vertical_fiber = tuple(
        ex.normalize(X.fiber_components[i] - horizontal_fiber[i]) for i in range(chart.n)
    )
    vertical = VectorField(
        chart, tuple(ex.ZERO for _ in range(chart.m)), vertical_fiber
    )
    return horizontal, vertical


def split_one_form(connection: EhresmannConnection, alpha: OneForm):
    """Decomposition alpha = alpha^H + alpha^B; the horizontal part is
    semibasic and semibasic forms are left unchanged."""
    _same_chart(connection, alpha)
    chart = connection.chart
    F, G = alpha.base_components, alpha.fiber_components
    horizontal_base = tuple(
        ex.normalize(
            F[mu] + ex.Sum(tuple(G[i] * connection.gamma[i][mu] for i in range(chart.n)))
        )
        for mu in range(chart.m)
    )
    horizontal = OneForm(chart, horizontal_base, tuple(ex.ZERO for _ in range(chart.n)))
    vertical_base = tuple(
        ex.normalize(F[mu] - horizontal_base[mu]) for mu in range(chart.m)
    )
    vertical = OneForm(chart, vertical_base, G)
    return horizontal, vertical


def curvature(connection: EhresmannConnection) -> CurvatureTensor:
    """R^j_{mu nu} = d Gamma^j_nu/dx^mu - d Gamma^j_mu/dx^nu
    + Gamma^i_mu d Gamma^j_nu/dy^i - Gamma^i_nu d Gamma^j_mu/dy^i."""
    chart = connection.chart
    x, y = chart.base_names, chart.fiber_names
    components = {}
    for j in range(chart.n):
        for mu in range(chart.m):
            for nu in range(mu + 1, chart.m):
                terms = [
                    ex.differentiate(connection.gamma[j][nu], x[mu]),
                    ex.Neg(ex.differentiate(connection.gamma[j][mu], x[nu])),
                ]
                for i in range(chart.n):
                    terms.append(
                        connection.gamma[i][mu]
                        * ex.differentiate(connection.gamma[j][nu], y[i])
                    )
                    terms.append(
                        ex.Neg(
                            connection.gamma[i][nu]
                            * ex.differentiate(connection.gamma[j][mu], y[i])
                        )
                    )
                components[(j, mu, nu)] = ex.normalize(ex.Sum(tuple(terms)))
    return CurvatureTensor(chart, components)


def is_integrable(connection: EhresmannConnection, probe: ex.ProbeConfig = ex.DEFAULT_PROBE) -> bool:
    """Zero curvature, decided componentwise by the probabilistic zero test."""
    return all(
        ex.is_zero(value, probe) for _, _, _, value in curvature(connection).entries()
    )


def integral_section_residual(connection: EhresmannConnection, phi: Section):
    """Residual table d phi^i/dx^mu - Gamma^i_mu(x, phi(x)); all zero iff
    phi is an integral section."""
    _same_chart(connection, phi)
    chart = connection.chart
    pullback = dict(zip(chart.fiber_names, phi.components))
    return tuple(
        tuple(
            ex.normalize(
                ex.differentiate(phi.components[i], x)
                - ex.substitute(connection.gamma[i][mu], pullback)
            )
            for mu, x in enumerate(chart.base_names)
        )
        for i in range(chart.n)
    )


def add_vertical(connection: EhresmannConnection, gamma_shift):
    """Shift the connection by a vertical-valued semibasic table; this is
    the affine structure of the space of connections."""
    chart = connection.chart
    _check_table(chart, gamma_shift, chart.n, chart.m, chart.coordinate_names, "shift")
    shifted = tuple(
        tuple(
            ex.normalize(connection.gamma[i][mu] + gamma_shift[i][mu])
            for mu in range(chart.m)
        )
        for i in range(chart.n)
    )
    return EhresmannConnection(chart, shifted)


# --------------------------------------------------------------------------
# numeric integral sections


def _rk4_sweep(connection, axis, x, y, target, steps_per_unit):
    """Advance the fiber values along the coordinate line x[axis] -> target,
    holding the other base coordinates fixed.  Classical fixed-step RK4."""
    chart = connection.chart
    length = target - x[axis]
    if length == 0.0:
        return y
    steps = max(1, round(abs(length) * steps_per_unit))
    h = length / steps

    def slope(s, fiber):
        bindings = dict(zip(chart.base_names, x))
        bindings[chart.base_names[axis]] = s
        bindings.update(zip(chart.fiber_names, fiber))
        if not chart.contains(bindings):
            raise OutsideChartError(
                f"integration left the chart box at {bindings}"
            )
        return [
            ex.evaluate(connection.gamma[i][axis], bindings)
            for i in range(chart.n)
        ]

    s = x[axis]
    fiber = list(y)
    for _ in range(steps):
        k1 = slope(s, fiber)
        k2 = slope(s + h / 2.0, [fiber[i] + h / 2.0 * k1[i] for i in range(chart.n)])
        k3 = slope(s + h / 2.0, [fiber[i] + h / 2.0 * k2[i] for i in range(chart.n)])
        k4 = slope(s + h, [fiber[i] + h * k3[i] for i in range(chart.n)])
        fiber = [
            fiber[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(chart.n)
        ]
        s += h
    x[axis] = target
    return fiber


def integral_section(
    connection: EhresmannConnection,
    x0,
    y0,
    targets,
    steps=1000,
    order=None,
    probe: ex.ProbeConfig = ex.DEFAULT_PROBE,
    check_integrable=True,
):
    """Numeric integral section through (x0, y0), sampled at the given base
    points.

    The section solves d f^i/dx^mu = Gamma^i_mu(x, f) and is built by RK4
    sweeps along coordinate lines, axis ``order[0]`` first (default
    ascending).  ``steps`` is the RK4 step density per unit coordinate
    length.  Zero curvature makes the result path-independent; by default
    the connection is checked and a curved one is refused.

    Returns a list of fiber-value lists, one per target.
    """
    chart = connection.chart
    if len(x0) != chart.m or len(y0) != chart.n:
        raise ChartError("start point has wrong dimensions")
    if check_integrable and not is_integrable(connection, probe):
        raise NotIntegrableError(
            "connection has nonzero curvature; integral sections do not exist"
        )
    axes = list(order) if order is not None else list(range(chart.m))
    if sorted(axes) != list(range(chart.m)):
        raise ChartError(f"order must be a permutation of 0..{chart.m - 1}")
    results = []
    for target in targets:
        if len(target) != chart.m:
            raise ChartError("target point has wrong dimension")
        x = list(map(float, x0))
        y = list(map(float, y0))
        for axis in axes:
            y = _rk4_sweep(connection, axis, x, y, float(target[axis]), steps)
        results.append(y)
    return results
