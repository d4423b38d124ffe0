"""Parameter sweeps over the preparation time and their serialization.

Times are reported in the dimensionless unit ``D_nn * tau``; the physical
preparation time is ``tau = Dtau / d_nn`` seconds.
"""
import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .coherence import SignalParams, coherence_intensities, signal
from .coupling import CouplingModel, build_hmq, coupling_matrix
from .entanglement import concurrence, reduce_to_pair
from .exceptions import DimensionBudgetError
from .propagator import eigendecompose, propagator_at
from .spin_basis import magnetizations
from .thermal import ThermalConfig, equilibrium_populations

__all__ = [
    "ExperimentConfig",
    "SweepResult",
    "run_sweep",
    "reproduce_figure",
    "write_output",
    "read_json",
    "FIGURES",
    "MAX_SPINS",
]

SCHEMA_VERSION = 1
MAX_SPINS = 12
APPEARANCE_THRESHOLD = 1e-3

# name -> (threshold, "max" means the recorded value must stay below it,
# "min" means it must stay above it)
CHECKS = {
    "sum_rule": (1e-10, "max"),
    "symmetry": (1e-10, "max"),
    "odd_orders": (1e-12, "max"),
    "unitarity": (1e-10, "max"),
    "spectrum": (1e-9, "max"),
    "min_reduced_eigenvalue": (-1e-9, "min"),
}

GRID_NOTE = "tau grid is a best-effort reconstruction of the published figure axes"


def _normalize_pairs(pairs, n_spins):
    if isinstance(pairs, str):
        if pairs.lower() != "all":
            raise ValueError(f"pairs must be 'all' or a list of (m, n), got {pairs!r}")
        return "all"
    out = []
    for p in pairs:
        m, n = (int(x) for x in p)
        if not 1 <= m < n <= n_spins:
            raise ValueError(f"invalid pair ({m}, {n}) for {n_spins} spins")
        if (m, n) not in out:
            out.append((m, n))
    return tuple(out)


@dataclass(frozen=True)
class ExperimentConfig:
    n_spins: int = 8
    model: CouplingModel = field(default_factory=CouplingModel)
    thermal: ThermalConfig = field(default_factory=ThermalConfig)
    tau_start: float = 0.0
    tau_end: float = 20.0
    tau_steps: int = 201
    pairs: object = "all"
    orders: tuple | None = None
    coherences: bool = True
    concurrences: bool = True
    eof: bool = True
    signal: SignalParams | None = None
    workers: int = 1
    check_spectrum: bool = True

    def __post_init__(self):
        if not isinstance(self.n_spins, (int, np.integer)) or self.n_spins < 2:
            raise ValueError(f"n_spins must be an integer >= 2, got {self.n_spins!r}")
        if self.n_spins > MAX_SPINS:
            raise DimensionBudgetError(
                f"{self.n_spins} spins needs {2**self.n_spins}-dim dense matrices; "
                f"the limit is {MAX_SPINS} spins"
            )
        if not 0 <= self.tau_start <= self.tau_end:
            raise ValueError(f"need 0 <= tau_start <= tau_end, got {self.tau_start}, {self.tau_end}")
        if self.tau_steps < 1:
            raise ValueError("tau_steps must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        object.__setattr__(self, "pairs", _normalize_pairs(self.pairs, self.n_spins))
        if self.orders is not None:
            orders = tuple(int(n) for n in self.orders)
            if any(abs(n) > self.n_spins for n in orders):
                raise ValueError(f"orders {orders} exceed +-{self.n_spins}")
            object.__setattr__(self, "orders", orders)

    def tau_grid(self):
        return np.linspace(self.tau_start, self.tau_end, self.tau_steps)

    def pair_list(self):
        if self.pairs == "all":
            n = self.n_spins
            return [(m, k) for m in range(1, n + 1) for k in range(m + 1, n + 1)]
        return list(self.pairs)

    def order_list(self):
        """Orders written to output: the configured ones, else all even orders."""
        if self.orders is not None:
            return list(self.orders)
        pos = list(range(0, self.n_spins + 1, 2))
        return pos + [-n for n in pos[1:]]

    def to_dict(self):
        d = asdict(self)
        d["pairs"] = self.pairs if self.pairs == "all" else [list(p) for p in self.pairs]
        d["orders"] = None if self.orders is None else list(self.orders)
        if self.signal is not None:
            d["signal"] = {
                "delta_omega": self.signal.delta_omega,
                "t": np.atleast_1d(np.asarray(self.signal.t, dtype=float)).tolist(),
            }
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["model"] = CouplingModel(**d["model"])
        d["thermal"] = ThermalConfig(**d["thermal"])
        if d.get("pairs") != "all":
            d["pairs"] = tuple(tuple(p) for p in d["pairs"])
        if d.get("orders") is not None:
            d["orders"] = tuple(d["orders"])
        if d.get("signal") is not None:
            s = d["signal"]
            d["signal"] = SignalParams(s["delta_omega"], np.asarray(s["t"], dtype=float))
        return cls(**d)


@dataclass(eq=False)
class SweepResult:
    """Observables on the tau grid of one sweep.

    ``intensities[i, n + N]`` holds ``J_n`` at ``tau[i]``. ``checks`` maps each
    invariant name to its per-tau residual (see ``CHECKS`` for thresholds).
    """

    config: ExperimentConfig
    tau: np.ndarray
    intensities: np.ndarray
    concurrence: dict
    eof: dict
    checks: dict
    metadata: dict
    signal_t: np.ndarray | None = None
    signal: np.ndarray | None = None

    @property
    def n_spins(self):
        return self.config.n_spins

    @property
    def spectra(self):
        from .coherence import CoherenceSpectrum

        return [CoherenceSpectrum(self.n_spins, row) for row in self.intensities]

    def J(self, n):
        """Intensity series of order ``n``."""
        if abs(n) > self.n_spins:
            return np.zeros_like(self.tau)
        return self.intensities[:, n + self.n_spins]

    def C(self, m, n):
        return self.concurrence[(m, n)]

    def first_crossing(self, series, threshold=APPEARANCE_THRESHOLD):
        """First grid time where ``series`` exceeds ``threshold``, else None.

        ``series`` is an array or a pair ``(m, n)`` for its concurrence.
        """
        if isinstance(series, tuple):
            series = self.concurrence[series]
        idx = np.flatnonzero(np.asarray(series) > threshold)
        return float(self.tau[idx[0]]) if idx.size else None

    def normalized_intensities(self):
        """``J_n / sum_m J_m(0)``; the denominator is the conserved total."""
        return self.intensities / self.metadata["reference_total"]

    def check_summary(self):
        out = {}
        for name, values in self.checks.items():
            thr, kind = CHECKS[name]
            if kind == "max":
                worst = float(np.max(values)) if len(values) else 0.0
                ok = worst < thr
            else:
                worst = float(np.min(values)) if len(values) else 0.0
                ok = worst > thr
            out[name] = {"worst": worst, "threshold": thr, "ok": bool(ok)}
        return out

    @property
    def passed(self):
        return all(v["ok"] for v in self.check_summary().values())

    def select(self, orders=None, pairs=None, coherences=None, concurrences=None):
        """A view restricted to some orders/pairs, for per-panel output."""
        pairs = list(self.concurrence) if pairs is None else [tuple(p) for p in pairs]
        cfg = replace(
            self.config,
            orders=self.config.orders if orders is None else tuple(orders),
            pairs=tuple(pairs),
            coherences=self.config.coherences if coherences is None else coherences,
            concurrences=self.config.concurrences if concurrences is None else concurrences,
            eof=self.config.eof if concurrences is None else (self.config.eof and concurrences),
        )
        return replace(
            self,
            config=cfg,
            concurrence={p: self.concurrence[p] for p in pairs},
            eof={p: self.eof[p] for p in pairs if p in self.eof},
        )

    def to_dict(self):
        d = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "tau": self.tau.tolist(),
            "orders": list(range(-self.n_spins, self.n_spins + 1)),
            "intensities": self.intensities.tolist(),
            "pairs": [
                {
                    "pair": list(p),
                    "concurrence": self.concurrence[p].tolist(),
                    "eof": self.eof[p].tolist() if p in self.eof else None,
                }
                for p in self.concurrence
            ],
            "checks": {k: np.asarray(v).tolist() for k, v in self.checks.items()},
            "check_summary": self.check_summary(),
            "metadata": self.metadata,
            "signal": None,
        }
        if self.signal is not None:
            d["signal"] = {
                "t": self.signal_t.tolist(),
                "real": self.signal.real.tolist(),
                "imag": self.signal.imag.tolist(),
            }
        return d

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        conc, eof = {}, {}
        for entry in d["pairs"]:
            p = tuple(entry["pair"])
            conc[p] = np.asarray(entry["concurrence"], dtype=float)
            if entry["eof"] is not None:
                eof[p] = np.asarray(entry["eof"], dtype=float)
        sig_t = sig = None
        if d.get("signal") is not None:
            sig_t = np.asarray(d["signal"]["t"], dtype=float)
            sig = np.asarray(d["signal"]["real"]) + 1j * np.asarray(d["signal"]["imag"])
        return cls(
            config=ExperimentConfig.from_dict(d["config"]),
            tau=np.asarray(d["tau"], dtype=float),
            intensities=np.asarray(d["intensities"], dtype=float),
            concurrence=conc,
            eof=eof,
            checks={k: np.asarray(v, dtype=float) for k, v in d["checks"].items()},
            metadata=d["metadata"],
            signal_t=sig_t,
            signal=sig,
        )

    def __eq__(self, other):
        if not isinstance(other, SweepResult):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _sweep_point(ctx, dtau):
    cfg = ctx["cfg"]
    u = propagator_at(ctx["es"], dtau / cfg.model.d_nn)
    ud = u.conj().T
    # both initial operators are diagonal: U D U^dagger = (U * diag) @ U^dagger
    rho = (u * ctx["pops"][None, :]) @ ud
    rho_z = (u * ctx["mags"][None, :]) @ ud
    spectrum = coherence_intensities(rho, rho_z)
    n = cfg.n_spins
    vals = spectrum.values
    checks = {
        "sum_rule": abs(vals.sum() - ctx["reference_total"]),
        "symmetry": spectrum.symmetry_residual(),
        "odd_orders": float(np.max(np.abs(vals[(np.arange(-n, n + 1) % 2) == 1]))),
        "unitarity": float(np.max(np.abs(u @ ud - np.eye(u.shape[0])))),
    }
    if cfg.check_spectrum:
        ev = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        checks["spectrum"] = float(np.max(np.abs(ev - ctx["sorted_pops"])))
    conc, eof, min_eig = {}, {}, np.inf
    if cfg.concurrences or cfg.eof:
        for p in ctx["pairs"]:
            rs = reduce_to_pair(rho, *p)
            min_eig = min(min_eig, rs.min_eigenvalue())
            res = concurrence(rs)
            conc[p] = res.c
            eof[p] = res.e_f
        checks["min_reduced_eigenvalue"] = min_eig
    sig = None
    if cfg.signal is not None:
        sig = signal(spectrum, cfg.signal)
    return vals, conc, eof, checks, sig


def run_sweep(cfg):
    """Evolve the equilibrium state over ``cfg.tau_grid()`` and collect observables."""
    d = coupling_matrix(cfg.n_spins, cfg.model)
    es = eigendecompose(build_hmq(d))
    pops = equilibrium_populations(cfg.n_spins, cfg.thermal)
    mags = magnetizations(cfg.n_spins)
    pairs = cfg.pair_list() if (cfg.concurrences or cfg.eof) else []
    ctx = {
        "cfg": cfg,
        "es": es,
        "pops": pops,
        "mags": mags,
        "sorted_pops": np.sort(pops),
        "reference_total": float(np.dot(pops, mags)),
        "pairs": pairs,
    }
    tau = cfg.tau_grid()
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            points = list(pool.map(lambda t: _sweep_point(ctx, t), tau))
    else:
        points = [_sweep_point(ctx, t) for t in tau]

    intensities = np.array([p[0] for p in points])
    conc = {pr: np.array([p[1][pr] for p in points]) for pr in pairs}
    eof = {pr: np.array([p[2][pr] for p in points]) for pr in pairs} if cfg.eof else {}
    checks = {k: np.array([p[3][k] for p in points]) for k in points[0][3]}
    sig_t = sig = None
    if cfg.signal is not None:
        sig_t = np.atleast_1d(np.asarray(cfg.signal.t, dtype=float))
        sig = np.array([np.atleast_1d(p[4]) for p in points])
    metadata = {
        "package_version": __version__,
        "schema_version": SCHEMA_VERSION,
        "zeeman_b": cfg.thermal.zeeman_b(cfg.n_spins),
        "reference_total": ctx["reference_total"],
        "time_unit": "D_nn * tau (dimensionless)",
    }
    result = SweepResult(cfg, tau, intensities, conc, eof, checks, metadata, sig_t, sig)
    result.metadata["checks_passed"] = result.passed
    return result


NN_PAIRS = [(1, 2), (2, 3), (3, 4), (4, 5)]
NNN_PAIRS = [(1, 3), (2, 4), (3, 5)]
NNNN_PAIRS = [(1, 4), (2, 5), (3, 6)]

FIGURES = ("fig1", "fig2", "fig3")


def reproduce_figure(which, out_dir=None, tau_steps=201, tau_end=20.0, workers=1):
    """Run the canned sweep(s) behind a figure; returns ``{panel: SweepResult}``.

    If ``out_dir`` is given, one CSV per panel is written there.
    """
    which = which.lower()
    if which not in FIGURES:
        raise ValueError(f"unknown figure {which!r}; choose from {FIGURES}")
    common = dict(tau_end=tau_end, tau_steps=tau_steps, workers=workers)
    panels = {}
    if which in ("fig1", "fig2"):
        model = CouplingModel.nearest_neighbor() if which == "fig1" else CouplingModel.all_pairs()
        orders = (0, 2, -2) if which == "fig1" else (0, 2, -2, 4, -4, 6, -6)
        cfg = ExperimentConfig(
            n_spins=8, model=model, pairs=NN_PAIRS + NNN_PAIRS + NNNN_PAIRS, orders=orders, **common
        )
        res = run_sweep(cfg)
        res.metadata["grid_note"] = GRID_NOTE
        panels[f"{which}a"] = res.select(pairs=[], concurrences=False)
        for suffix, pairs in zip("bcd", (NN_PAIRS, NNN_PAIRS, NNNN_PAIRS)):
            panels[f"{which}{suffix}"] = res.select(pairs=pairs, coherences=False)
    else:
        for n in (6, 7, 8, 9):
            cfg = ExperimentConfig(
                n_spins=n,
                model=CouplingModel.all_pairs(),
                pairs=[(1, n)],
                coherences=False,
                **common,
            )
            res = run_sweep(cfg)
            res.metadata["grid_note"] = GRID_NOTE
            panels[f"fig3_n{n}"] = res
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, res in panels.items():
            write_output(res, "csv", out_dir / f"{name}.csv")
    return panels


def _fmt(x):
    return repr(float(x))


def _csv_table(result, normalized=False):
    cfg = result.config
    header = ["tau"]
    cols = [result.tau]
    if cfg.coherences:
        norm = result.normalized_intensities() if normalized else None
        for n in cfg.order_list():
            header.append(f"J{n}")
            cols.append(result.J(n))
            if normalized:
                header.append(f"J{n}_norm")
                cols.append(norm[:, n + cfg.n_spins])
    if cfg.concurrences:
        for m, n in result.concurrence:
            header.append(f"C_{m}_{n}")
            cols.append(result.concurrence[(m, n)])
    if cfg.eof:
        for m, n in result.eof:
            header.append(f"EF_{m}_{n}")
            cols.append(result.eof[(m, n)])
    rows = [[_fmt(c[i]) for c in cols] for i in range(len(result.tau))]
    return header, rows


def write_output(result, fmt, path, normalized=False):
    """Write a sweep as CSV or JSON.

    CSV columns are ``tau, J<n>..., C_<m>_<n>..., EF_<m>_<n>...`` following
    the config's output switches. If the sweep carries an MQ signal, it goes
    to a sibling file ``<stem>_signal.csv`` with ``tau, t, S_re, S_im`` rows.
    JSON holds the full result, including the invariant checks.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "json":
            with open(path, "w") as f:
                json.dump(result.to_dict(), f, indent=1)
                f.write("\n")
        elif fmt == "csv":
            header, rows = _csv_table(result, normalized)
            with open(path, "w", newline="") as f:
                w = csv.writer(f, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
            if result.signal is not None:
                sig_path = path.with_name(f"{path.stem}_signal.csv")
                with open(sig_path, "w", newline="") as f:
                    w = csv.writer(f, lineterminator="\n")
                    w.writerow(["tau", "t", "S_re", "S_im"])
                    for i, tau in enumerate(result.tau):
                        for t, s in zip(result.signal_t, result.signal[i]):
                            w.writerow([_fmt(tau), _fmt(t), _fmt(s.real), _fmt(s.imag)])
        else:
            raise ValueError(f"unknown format {fmt!r}; use 'csv' or 'json'")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_json(path):
    with open(path) as f:
        return SweepResult.from_dict(json.load(f))
