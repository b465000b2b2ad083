"""Parameter sweeps and the figure/table generators built on them."""
import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .observables import density, expect_J_moments, windowed_phi_moments
from .states import cat_state, coherent_state, fock_state, squeezed_coherent_state
from .uncertainty import DELTA0_SQ_DEFAULT, uncertainty_report

__all__ = [
    "SweepSpec",
    "ScanTable",
    "ScanRowError",
    "MEASURES",
    "worker_count",
    "scan",
    "figure1",
    "figure2",
    "figure3",
    "golden_section",
    "coherent_max_variance",
    "delta0_search",
    "estimate_delta0",
    "sum_ur_scan",
    "SqueezingSurvey",
    "squeezing_survey",
]

FAMILIES = ("coherent", "squeezed", "cat")
VARYING = ("a_real", "a_imag", "s", "z_mod", "z_arg")

_FLAG_MEASURES = ("phi_below_commutator", "J_below_commutator", "phi_below_delta0", "J_below_delta0")
MEASURES = (
    "kr_phi",
    "kr_J",
    "kr_sum",
    "var_phi",
    "var_J",
    "var_sum",
    "cov_Jphi",
    "im_G_Jphi",
    "detG",
    "schrodinger_lhs",
    "schrodinger_rhs",
    "mean_phi",
    "mean_J",
) + _FLAG_MEASURES


class ScanRowError(RuntimeError):
    def __init__(self, row, value, cause):
        super().__init__(f"row {row} (param={value!r}) failed: {cause}")
        self.row = row
        self.value = value


def worker_count():
    """Worker cap from ``CIRCLE_UNC_THREADS``; 0 or unset means one per CPU."""
    raw = os.environ.get("CIRCLE_UNC_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError("CIRCLE_UNC_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class SweepSpec:
    family: str
    varying: str
    lo: float
    hi: float
    count: int
    z: complex = 1.0
    a: complex = 0.0
    s: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.varying not in VARYING:
            raise ValueError(f"varying must be one of {VARYING}")
        if self.count < 2 or not self.lo < self.hi:
            raise ValueError("need count >= 2 and lo < hi")

    def values(self):
        return np.linspace(self.lo, self.hi, self.count)

    def state(self, value):
        z, a, s = complex(self.z), complex(self.a), self.s
        if self.varying == "a_real":
            a = complex(value, a.imag)
        elif self.varying == "a_imag":
            a = complex(a.real, value)
        elif self.varying == "s":
            s = value
        elif self.varying == "z_mod":
            z = value * cmath.exp(1j * cmath.phase(z))
        elif self.varying == "z_arg":
            z = abs(z) * cmath.exp(1j * value)
        if self.family == "coherent":
            return coherent_state(z)
        if self.family == "squeezed":
            return squeezed_coherent_state(z, s)
        return cat_state(z, a)

    def provenance(self):
        return {
            "family": self.family,
            "varying": self.varying,
            "z": _fmt_complex(complex(self.z)),
            "a": _fmt_complex(complex(self.a)),
            "s": repr(float(self.s)),
        }


@dataclass
class ScanTable:
    """One parameter column plus named measure columns, rows in parameter order."""

    param: str
    values: np.ndarray
    columns: dict
    header: dict = field(default_factory=dict)
    labels: list = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        n = len(self.values)
        for name, col in self.columns.items():
            if len(col) != n:
                raise ValueError(f"column {name} has {len(col)} rows, expected {n}")
        if n > 1 and not np.all(np.diff(self.values) > 0):
            raise ValueError("parameter values must be strictly increasing")

    def __len__(self):
        return len(self.values)

    def column(self, name):
        return np.asarray(self.columns[name])

    def to_csv(self, digits=17):
        lines = [f"# {k}={v}" for k, v in self.header.items()]
        names = list(self.columns)
        head = [self.param] + (["label"] if self.labels is not None else []) + names
        lines.append(",".join(head))
        for i, v in enumerate(self.values):
            cells = [_fmt_num(v, digits)]
            if self.labels is not None:
                cells.append(self.labels[i])
            cells += [_fmt_num(self.columns[n][i], digits) for n in names]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "param": self.param,
            "values": [float(v) for v in self.values],
            "columns": {k: [_json_val(x) for x in col] for k, col in self.columns.items()},
            "header": dict(self.header),
            "labels": self.labels,
        }


def _fmt_num(x, digits):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    return f"{float(x):.{digits}g}"


def _fmt_complex(z):
    return f"{z.real:.17g},{z.imag:.17g}"


def _json_val(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    return float(x)


def _measure_row(psi, measures, delta0_sq):
    rep = uncertainty_report(psi, delta0_sq)
    row = {}
    for m in measures:
        if m == "var_sum":
            row[m] = rep.var_phi + rep.var_J
        elif m in _FLAG_MEASURES:
            row[m] = bool(rep.squeeze_flags[m])
        else:
            row[m] = getattr(rep, m)
    return row


def _map_rows(fn, values, workers):
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(values) < 8:
        return [fn(i, v) for i, v in enumerate(values)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        # map yields in submission order whatever the completion order
        return list(ex.map(fn, range(len(values)), values))


def scan(spec, measures, delta0_sq=DELTA0_SQ_DEFAULT, workers=None):
    """Evaluate ``measures`` on every point of ``spec``; rows are independent."""
    measures = list(measures)
    bad = [m for m in measures if m not in MEASURES]
    if bad:
        raise ValueError(f"unknown measures {bad}; choose from {MEASURES}")
    values = spec.values()

    def row(i, v):
        try:
            psi = spec.state(float(v))
        except Exception as exc:
            raise ScanRowError(i, float(v), exc) from exc
        return _measure_row(psi, measures, delta0_sq)

    rows = _map_rows(row, values, workers)
    columns = {m: [r[m] for r in rows] for m in measures}
    header = spec.provenance()
    header["delta0_sq"] = repr(delta0_sq)
    return ScanTable(spec.varying, values, columns, header)


def figure1(lo=-3.0, hi=3.0, count=601, workers=None):
    """K-R uncertainties of cat states |z=1, a>, real a."""
    spec = SweepSpec("cat", "a_real", lo, hi, count, z=1.0)
    return scan(spec, ["kr_phi", "kr_J", "kr_sum"], workers=workers)


def figure2(n=1024):
    """Angle densities of the odd cat |1;-> and the coherent state |1> on [-pi, pi]."""
    phis = np.linspace(-math.pi, math.pi, n)
    odd = cat_state(1.0, -1.0)
    cs = coherent_state(1.0)
    return ScanTable(
        "phi",
        phis,
        {"p_cat": density(odd, phis), "p_cs": density(cs, phis)},
        {"cat": "z=1,a=-1", "cs": "z=1"},
    )


def figure3(lo=-3.0, hi=3.0, count=601, workers=None):
    """det G of (J, phi) in cat states |z, a> for z = 0.4 and z = 1, real a."""
    cols = {}
    values = None
    for z, name in ((0.4, "detG_z0.4"), (1.0, "detG_z1")):
        t = scan(SweepSpec("cat", "a_real", lo, hi, count, z=z), ["detG"], workers=workers)
        cols[name] = t.column("detG")
        values = t.values
    return ScanTable("a_real", values, cols, {"family": "cat", "z": "0.4;1"})


def golden_section(f, lo, hi, tol=1e-6, max_iter=200):
    """Minimize a unimodal ``f`` on [lo, hi]; returns ``(x, f(x))``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def coherent_max_variance(z):
    """max(var_phi, var_J) in the coherent state |z>."""
    psi = coherent_state(z)
    var_phi = windowed_phi_moments(psi).var_phi
    var_J = expect_J_moments(psi)[2]
    return max(var_phi, var_J)


def delta0_search(z_mods=None, phases=(0.0,), tol=1e-6):
    """Smallest simultaneous value of the two variances over coherent states.

    Scans |z| (default 129 log-spaced points in [0.2, 5]) and the phases,
    then refines the winning |z| between its grid neighbours by golden
    section. Returns ``(delta0_sq, |z|, phase)``.
    """
    if z_mods is None:
        z_mods = np.geomspace(0.2, 5.0, 129)
    z_mods = np.asarray(z_mods, dtype=float)
    phases = list(phases)
    if len(z_mods) == 0 or not phases:
        raise ValueError("empty grid")
    best = None
    for ph in phases:
        for i, r in enumerate(z_mods):
            val = coherent_max_variance(r * cmath.exp(1j * ph))
            if best is None or val < best[0]:
                best = (val, i, ph)
    val, i, ph = best
    r = z_mods[i]
    if len(z_mods) > 1:
        lo = z_mods[max(i - 1, 0)]
        hi = z_mods[min(i + 1, len(z_mods) - 1)]
        r_ref, val_ref = golden_section(lambda x: coherent_max_variance(x * cmath.exp(1j * ph)), lo, hi, tol)
        if val_ref < val:
            r, val = r_ref, val_ref
    return val, float(r), ph


def estimate_delta0(z_mods=None, phases=(0.0,), tol=1e-6):
    return delta0_search(z_mods, phases, tol)[0]


def default_sum_ur_states():
    states = [coherent_state(r * cmath.exp(1j * ph))
              for r in (0.2, 0.4, 1.0, 2.0, 3.0) for ph in (0.0, math.pi / 4, math.pi / 2)]
    states += [fock_state(m) for m in (0, 1, 5)]
    states += [squeezed_coherent_state(1.0, s) for s in (0.05, 0.1, 0.25, 0.5, 2.0)]
    states += [cat_state(z, a) for z in (0.4, 1.0) for a in (-2.0, -1.0, -0.5, 0.5, 1.0, 1j, -1j)]
    return states


def sum_ur_scan(states=None, delta0_sq=DELTA0_SQ_DEFAULT):
    """var_phi + var_J against the lower bound 2 * delta0_sq; violations are flagged, not raised."""
    if states is None:
        states = default_sum_ur_states()
    rows = [uncertainty_report(psi, delta0_sq) for psi in states]
    total = [r.var_phi + r.var_J for r in rows]
    bound = 2.0 * delta0_sq
    return ScanTable(
        "index",
        np.arange(len(states)),
        {
            "var_phi": [r.var_phi for r in rows],
            "var_J": [r.var_J for r in rows],
            "var_sum": total,
            "bound": [bound] * len(rows),
            "violated": [t < bound for t in total],
        },
        {"delta0_sq": repr(delta0_sq)},
        labels=[psi.label.replace(",", ";") for psi in states],
    )


@dataclass
class SqueezingSurvey:
    squeezed: ScanTable
    cat: ScanTable
    checks: dict


def squeezing_survey(delta0_sq=DELTA0_SQ_DEFAULT, workers=None):
    """Angle squeezing in |1>_s over s in [0.05, 2] and in cat states |1, a>."""
    cols = ["var_phi", "var_J", "im_G_Jphi", "phi_below_commutator", "phi_below_delta0",
            "J_below_commutator", "J_below_delta0"]
    s_values = np.geomspace(0.05, 2.0, 60)
    rows = _map_rows(lambda i, s: _measure_row(squeezed_coherent_state(1.0, s), cols, delta0_sq),
                     s_values, workers)
    sq = ScanTable("s", s_values, {c: [r[c] for r in rows] for c in cols},
                   {"family": "squeezed", "z": "1", "delta0_sq": repr(delta0_sq)})
    cat = scan(SweepSpec("cat", "a_real", -3.0, 3.0, 61, z=1.0), cols, delta0_sq, workers)
    var = sq.column("var_phi")
    checks = {
        # s_values ascend, so "nonincreasing as s decreases" is nondecreasing along the table
        "monotone_in_s": bool(np.all(np.diff(var) >= -1e-12)),
        "var_phi_at_s_min": float(var[0]),
        "strong_at_s_min": bool(var[0] < 0.1),
    }
    return SqueezingSurvey(sq, cat, checks)
