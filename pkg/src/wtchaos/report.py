"""Analyses driven by an :class:`ExperimentConfig` and their on-disk form.

Every function here composes calls into the library modules; the CLI only
chooses which one to run and where to write.  Outputs are deterministic:
JSON is written with sorted keys, floats use their shortest round-trip
``repr``, and the only time-dependent data lives in the manifest.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
import os
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from . import __version__
from .config import ExperimentConfig
from .dccw import (SynthesizedVector, build_synthesis_plan, condition_i_diagnostic,
                   condition_ii_diagnostic, dccw_check, synthesize_vector, verify_dcc)
from .density import IndexSet, pair_profile, scrambled_pair_verdict
from .div import irregularity_evidence, mirror_two_component_check
from .errors import NumericRangeError
from .numerics import LogValue, exact_root
from .operator import RATIONAL, WeightedTranslation
from .vector import SparseVector
from .weights import MirrorProduct, as_fraction

__all__ = ['resolve_vector', 'synthesized', 'phi_rows', 'orbit_rows', 'density_result',
           'dccw_result', 'synthesis_result', 'verify_result', 'pair_result',
           'mirror_result', 'full_report', 'write_report', 'to_csv', 'to_json_text',
           'SERIES_HEADER']

SERIES_HEADER = ['n', 'value', 'log_value']


# ---------------------------------------------------------------------------
# formatting

def _fmt(v) -> str:
    if v is None:
        return ''
    if isinstance(v, float):
        if math.isinf(v):
            return 'inf' if v > 0 else '-inf'
        return repr(v)
    return str(v)


def _clean(obj):
    """JSON-safe copy: non-finite floats become strings, Fractions become ``"p/q"``."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return _fmt(obj) if not math.isnan(obj) else 'nan'
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, 'to_json'):
        return _clean(obj.to_json())
    return obj


def to_json_text(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator='\n')
    wr.writerow(header)
    for r in rows:
        wr.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _series_rows(series: Sequence[LogValue], exact: Optional[Sequence] = None) -> List[list]:
    rows = []
    for i, v in enumerate(series):
        row = [i + 1, v.value, None if v.zero_flag else v.log_magnitude]
        if exact is not None:
            row.append(exact[i])
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# analyses

def _K(cfg: ExperimentConfig):
    return [cfg.element(g) for g in cfg.K]


def _B(cfg: ExperimentConfig) -> IndexSet:
    return IndexSet(cfg.N, cfg.B) if cfg.B is not None else IndexSet.full(cfg.N)


def synthesized(cfg: ExperimentConfig, T: Optional[WeightedTranslation] = None) -> SynthesizedVector:
    """The irregular vector built from the best points ``g_n`` over B."""
    T = T or cfg.operator()
    cii = condition_ii_diagnostic(T, cfg.N, cfg.window, _B(cfg), cfg.mode)
    plan = build_synthesis_plan(T, _B(cfg), cii.g_map(), cfg.N, cfg.mode)
    return synthesize_vector(plan)


def resolve_vector(cfg: ExperimentConfig, T: Optional[WeightedTranslation] = None) -> SparseVector:
    v = cfg.explicit_vector()
    return synthesized(cfg, T).y if v is None else v


def phi_rows(cfg: ExperimentConfig) -> str:
    """CSV of ``phi_n(x)`` for every x in K and n = 1..N."""
    T = cfg.operator()
    rows = []
    for x in _K(cfg):
        for n in range(1, cfg.N + 1):
            lv = T.phi_log(n, x)
            ex = None
            if cfg.mode == RATIONAL:
                try:
                    ex = T.phi_exact(n, x)
                    lv = LogValue.from_value(ex)
                except NumericRangeError:
                    ex = None
            rows.append([n, json.dumps(x.to_json()), lv.value, lv.log_magnitude, ex])
    return to_csv(['n', 'x', 'value', 'log_value', 'exact'], rows)


def _exact_norms(T: WeightedTranslation, y: SparseVector, N: int, mode: str):
    p = as_fraction(T.p)
    if mode != RATIONAL or p.denominator != 1 or not y.exact:
        return None
    try:
        pw = T.orbit_norm_series_exact(y, N)
    except NumericRangeError:
        return None
    return [exact_root(q, int(p)) for q in pw]


def orbit_rows(cfg: ExperimentConfig, horizon: Optional[int] = None) -> str:
    """CSV ``n,value,log_value,exact`` of ``||T^n y||_p``; exact when the norm is rational."""
    T = cfg.operator()
    y = resolve_vector(cfg, T)
    N = horizon or cfg.N
    return to_csv(SERIES_HEADER + ['exact'],
                  _series_rows(T.orbit_norm_series(y, N), _exact_norms(T, y, N, cfg.mode)
                               or [None] * N))


def density_result(cfg: ExperimentConfig):
    T = cfg.operator()
    return condition_i_diagnostic(T, _K(cfg), cfg.orbit_horizon, cfg.delta_grid,
                                  cfg.theta, cfg.mode)


def dccw_result(cfg: ExperimentConfig) -> dict:
    T = cfg.operator()
    res = dccw_check(T, _K(cfg), cfg.N, cfg.window, cfg.orbit_horizon, cfg.delta_grid,
                     cfg.theta, _B(cfg), cfg.mode)
    res['verdict_summary'] = [res['condition_ii_verdict'], res['condition_i_verdict']]
    return res


def synthesis_result(cfg: ExperimentConfig) -> dict:
    sv = synthesized(cfg)
    return {'plan': sv.plan.to_json(), 'vector': sv.to_json()}


def verify_result(cfg: ExperimentConfig, sv: Optional[SynthesizedVector] = None,
                  ci=None) -> dict:
    T = cfg.operator()
    sv = sv or synthesized(cfg, T)
    ci = ci or condition_i_diagnostic(T, _K(cfg), cfg.orbit_horizon, cfg.delta_grid,
                                      cfg.theta, cfg.mode)
    A = ci.A[min(ci.A)]
    return verify_dcc(T, sv, [_K(cfg)], A, cfg.N, cfg.growth_threshold)


def pair_result(cfg: ExperimentConfig, y: Optional[SparseVector] = None):
    """Pair test of the configured vector against the zero vector."""
    T = cfg.operator()
    y = y if y is not None else resolve_vector(cfg, T)
    prof = pair_profile(T, y, SparseVector(), cfg.orbit_horizon, cfg.tau_grid, cfg.theta)
    verdict = scrambled_pair_verdict(prof, cfg.epsilon, cfg.tau, cfg.delta_low,
                                     cfg.delta_high)
    return prof, verdict


def mirror_result(cfg: ExperimentConfig) -> dict:
    """Mirror example on Z x Z_2 built from the configured weight (or its base)."""
    w = cfg.weight
    base = w.base if isinstance(w, MirrorProduct) else w
    return mirror_two_component_check(base, cfg.N, cfg.mirror_samples, cfg.p,
                                      cfg.delta_grid[0], cfg.Lambda, cfg.theta)


def full_report(cfg: ExperimentConfig):
    """Every analysis in one pass.  Returns ``(report, csv_files)``."""
    T = cfg.operator()
    res = dccw_check(T, _K(cfg), cfg.N, cfg.window, cfg.orbit_horizon, cfg.delta_grid,
                     cfg.theta, _B(cfg), cfg.mode)
    ci, cii = res['condition_i'], res['condition_ii']
    plan = build_synthesis_plan(T, _B(cfg), cii.g_map(), cfg.N, cfg.mode)
    sv = synthesize_vector(plan)
    ver = verify_result(cfg, sv, ci)
    explicit = cfg.explicit_vector()
    y = sv.y if explicit is None else explicit
    prof, pair = pair_result(cfg, y)
    irr = irregularity_evidence(T, y, cfg.orbit_horizon, cfg.delta_grid[0], cfg.Lambda,
                                cfg.theta)
    report = {
        'config': cfg.to_json(),
        'operator': T.to_json(),
        'condition_i': ci.to_json(),
        'condition_ii': cii.to_json(),
        'plan': plan.to_json(),
        'vector': sv.to_json() if explicit is None else {'entries': explicit.to_json()},
        'verification': ver,
        'pair_test': {'profile': prof.to_json(), 'verdict': pair},
        'irregularity': irr.to_json(),
        'verdict': {'dccw': res['verdict'], 'condition_i': res['condition_i_verdict'],
                    'condition_ii': res['condition_ii_verdict'], 'pair': pair['verdict']},
    }
    d0 = min(ci.densities)
    files = {
        's_n.csv': to_csv(['n', 's_n', 'log_value', 'exact_p_power'],
                          _series_rows(ci.s, ci.s_exact_p_power or [None] * len(ci.s))),
        'u_n.csv': to_csv(['n', 'u_n', 'log_value', 'exact'],
                          [[e.n, e.u.value, e.u.log_magnitude, e.u_exact] for e in cii.entries]),
        'c_n_phi_n.csv': to_csv(['n', 'c_n_phi_n', 'log_value', 'exact_square'],
                                [[n, plan.c_phi(n), -0.5 * plan.log_r[n], plan.c_phi_sq_exact(n)]
                                 for n in plan.indices]),
        'orbit.csv': to_csv(SERIES_HEADER, _series_rows(irr.series)),
        'running_density.csv': to_csv(['n', 'running_density'],
                                      [[i + 1, float(v)] for i, v in
                                       enumerate(ci.densities[d0].running)]),
        'F_value.csv': to_csv(['n', 'tau', 'F_value'],
                              [[i + 2, t, float(prof.F[i, k])]
                               for i in range(prof.F.shape[0])
                               for k, t in enumerate(prof.taus)]),
    }
    return report, files


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_report(cfg: ExperimentConfig, out_dir: str, now: Optional[_dt.datetime] = None) -> dict:
    """Write ``report.json``, the CSV series and ``manifest.json``; return the manifest."""
    started = now or _dt.datetime.now(_dt.timezone.utc)
    report, files = full_report(cfg)
    files = dict(files)
    files['report.json'] = to_json_text(report)
    os.makedirs(out_dir, exist_ok=True)
    listing = []
    for name in sorted(files):
        data = files[name].encode('utf-8')
        with open(os.path.join(out_dir, name), 'wb') as fh:
            fh.write(data)
        listing.append({'name': name, 'sha256': _sha256(data), 'bytes': len(data)})
    finished = _dt.datetime.now(_dt.timezone.utc) if now is None else now
    manifest = {'config': cfg.raw, 'config_hash': cfg.content_hash, 'version': __version__,
                'files': listing, 'started': started.isoformat(),
                'finished': finished.isoformat()}
    with open(os.path.join(out_dir, 'manifest.json'), 'w', encoding='utf-8') as fh:
        fh.write(to_json_text(manifest))
    return manifest
