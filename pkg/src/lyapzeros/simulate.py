"""Lyapunov spectrum estimation for random cocycles and verdicts against
spectrum predictions.

The cocycle is an i.i.d. product of group elements exp(sum c_i B_i) with
gaussian coefficients. Exponents are estimated per trial by the QR
(Benettin) scheme: the orthonormal frame is multiplied by blocks of
``renorm_interval`` steps and re-orthonormalized, accumulating
log |diag R|. Trials use independent, reproducible streams derived from
(master_seed, trial index) via numpy's SeedSequence, so identical
configurations give bit-identical results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from ._expm import expm_batch
from .errors import NumericalError, ParameterError, UnsupportedFeatureError
from .prediction import (LyapunovVector, SpectrumPrediction, evaluate_spectrum,
                         realified_weights)
from .realforms import (Family, GroupSampler, RealFormSpec,
                        exterior_power_matrix, lie_algebra_basis,
                        weights_restricted)
from .weights import RepKind, RepSpec, Weight, k_subsets

_CHUNK_TARGET = 20_000   # steps sampled per batch; fixed so runs are reproducible

_SPIN_MESSAGE = "unsupported: spin representations are weight-combinatorics only"


@dataclass(frozen=True)
class SimConfig:
    """Simulation parameters; defaults complete the su(2,1) suite in seconds.

    ``warmup_steps`` lets the QR frame align with the Oseledets flag before
    accumulation starts (removing the O(1/T) transient bias that would
    otherwise swamp the zero exponents' error bars); None picks
    min(1000, steps // 10), rounded down to whole renorm blocks.
    """

    form: RealFormSpec
    rep: RepSpec = RepSpec.standard()
    steps: int = 100_000
    trials: int = 8
    renorm_interval: int = 10
    scale: float = 0.3
    master_seed: int = 42
    zero_threshold: float = 0.05
    warmup_steps: int | None = None

    def __post_init__(self):
        if self.rep.is_spin_like():
            raise UnsupportedFeatureError(_SPIN_MESSAGE)
        if self.steps < 1 or self.trials < 1:
            raise ParameterError("steps and trials must be positive")
        if not 1 <= self.renorm_interval <= 50:
            raise ParameterError("renorm_interval must lie in 1..50")
        if self.scale < 0:
            raise ParameterError("scale must be nonnegative")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ParameterError("master_seed must be a 64-bit unsigned integer")
        if not 0.0 < self.zero_threshold < 0.5:
            raise ParameterError("zero_threshold must lie in (0, 0.5)")
        if self.warmup_steps is not None and not 0 <= self.warmup_steps < self.steps:
            raise ParameterError("warmup_steps must lie in 0..steps-1")

    def resolved_warmup(self, interval: int) -> int:
        """Warmup in steps, rounded down to whole blocks of ``interval``."""
        w = self.warmup_steps if self.warmup_steps is not None else min(1000, self.steps // 10)
        return (w // interval) * interval


@dataclass(frozen=True)
class ZeroCluster:
    """Indices of the zero-classified band in a descending exponent list."""

    status: str                 # "ok" | "inconclusive"
    reason: str
    start: int | None = None    # slice bounds, 0-based
    stop: int | None = None

    @property
    def size(self) -> int:
        if self.start is None or self.stop is None:
            return 0
        return self.stop - self.start

    def as_record(self) -> dict:
        return {"status": self.status, "reason": self.reason,
                "start": self.start, "stop": self.stop, "size": self.size}


_EXACT_ZERO = 1e-12   # below float resolution of the accumulated estimates


def classify_zero_cluster(exponents, stderr, zero_threshold: float) -> ZeroCluster:
    """Classify which exponents of a descending list are zero.

    An exponent is a zero candidate when |lambda_i| < threshold * lambda_max
    and |lambda_i| < 3 * stderr_i. Estimates below an absolute 1e-12 floor
    count as zero outright: metric-preserving directions yield exact zeros
    whose values and error bars are both rounding noise, where the
    3-stderr comparison would be meaningless. Candidates must be contiguous
    and separated from the nonzero ones by a multiplicative gap >= 2, else
    the classification is inconclusive. No positive top exponent, or a top
    exponent indistinguishable from its own error bar, is inconclusive.
    """
    exps = [float(x) for x in exponents]
    errs = [float(s) for s in stderr]
    if len(exps) != len(errs) or not exps:
        raise ParameterError("exponents and stderr must be equal-length, nonempty")
    lam_max = exps[0]
    if lam_max <= 0:
        return ZeroCluster("inconclusive", "no positive top exponent")
    if lam_max < 3 * errs[0]:
        return ZeroCluster("inconclusive", "top exponent indistinguishable from zero")
    zero_idx = [i for i, (x, s) in enumerate(zip(exps, errs))
                if abs(x) < zero_threshold * lam_max
                and (abs(x) < 3 * s or abs(x) < _EXACT_ZERO)]
    if not zero_idx:
        return ZeroCluster("ok", "no zero exponents")
    start, stop = zero_idx[0], zero_idx[-1] + 1
    if stop - start != len(zero_idx):
        return ZeroCluster("inconclusive", "zero candidates are not contiguous")
    max_zero = max(abs(exps[i]) for i in zero_idx)
    min_nonzero = min(abs(exps[i]) for i in range(len(exps)) if not start <= i < stop)
    if max_zero > 0 and min_nonzero / max_zero < 2.0:
        return ZeroCluster(
            "inconclusive",
            f"gap ratio {min_nonzero / max_zero:.3g} below 2 between zero and nonzero bands")
    return ZeroCluster("ok", "gap-separated zero band", start, stop)


@dataclass(frozen=True, eq=False)
class LyapunovResult:
    """Estimated spectrum on the realified space, with diagnostics."""

    config: SimConfig
    exponents: tuple[float, ...]            # realified, descending
    stderr: tuple[float, ...]
    complex_exponents: tuple[float, ...]    # one entry per matrix dimension
    complex_stderr: tuple[float, ...]
    trial_exponents: tuple[tuple[float, ...], ...]   # realified, aligned columns
    zero_cluster: ZeroCluster
    standard_exponents: tuple[float, ...] | None     # tracked during exterior runs
    standard_stderr: tuple[float, ...] | None
    max_sample_form_error: float
    max_block_form_error: float
    renorm_interval_used: int
    elapsed_seconds: float
    verdict: str | None = None

    def as_record(self) -> dict:
        return {
            "form": self.config.form.label(),
            "representation": self.config.rep.label(),
            "exponents_real": list(self.exponents),
            "stderr_real": list(self.stderr),
            "zero_cluster": self.zero_cluster.as_record(),
            "verdict": self.verdict,
            "max_sample_form_error": self.max_sample_form_error,
            "max_block_form_error": self.max_block_form_error,
            "renorm_interval_used": self.renorm_interval_used,
            "elapsed_seconds": self.elapsed_seconds,
        }


class _CocycleOverflow(Exception):
    pass


def _trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    # documented stream contract: stream j = default_rng([master_seed, j])
    return np.random.default_rng([master_seed, trial])


def _block_bounds(total: int, interval: int, chunk: int) -> list[tuple[int, int]]:
    """Chunk sizes (in steps) aligned to renorm blocks."""
    per_chunk = max(interval, (chunk // interval) * interval)
    bounds = []
    done = 0
    while done < total:
        m = min(per_chunk, total - done)
        bounds.append((done, done + m))
        done += m
    return bounds


def _fold_blocks(G: np.ndarray, interval: int) -> np.ndarray:
    """Products over consecutive blocks of ``interval`` matrices.

    The tail block may be shorter. Product order matches cocycle order:
    the last matrix of a block is applied last.
    """
    m, d = G.shape[0], G.shape[-1]
    nfull = m // interval
    blocks = []
    if nfull:
        body = G[:nfull * interval].reshape(nfull, interval, d, d)
        B = body[:, 0]
        for j in range(1, interval):
            B = body[:, j] @ B
        blocks.append(B)
    if m % interval:
        tail = G[nfull * interval:]
        B = tail[0][None]
        for j in range(1, tail.shape[0]):
            B = tail[j][None] @ B
        blocks.append(B)
    return np.concatenate(blocks, axis=0)


def _form_errors_batch(sampler: GroupSampler, G: np.ndarray) -> float:
    worst = 0.0
    gt = np.swapaxes(G, -1, -2)
    for name, F in sampler.invariant_forms().items():
        left = np.conj(gt) if name == "hermitian" else gt
        err = np.abs(left @ F @ G - F).max()
        worst = max(worst, float(err) / float(np.abs(F).max()))
    return worst


def _run_trial(sampler: GroupSampler, ext_k: int | None, steps: int, warmup: int,
               interval: int, rng: np.random.Generator, track_standard: bool):
    d = sampler.matrix_dim
    nb = sampler.basis.shape[0]
    dtype = sampler.basis.dtype
    if ext_k is None:
        D = d
    else:
        D = len(k_subsets(d, ext_k))
    Q = np.eye(D, dtype=dtype)
    acc = np.zeros(D)
    Qs = np.eye(d, dtype=dtype) if track_standard else None
    accs = np.zeros(d) if track_standard else None
    max_sample_err = 0.0
    max_block_err = 0.0
    window = steps - warmup
    seen = 0   # steps consumed so far; accumulation starts after warmup

    for lo, hi in _block_bounds(steps, interval, _CHUNK_TARGET):
        m = hi - lo
        coeffs = rng.standard_normal((m, nb)) * sampler.scale
        X = np.tensordot(coeffs, sampler.basis, axes=(1, 0))
        G = expm_batch(X)
        if not np.isfinite(G).all():
            raise _CocycleOverflow("matrix exponential overflow")
        max_sample_err = max(max_sample_err, _form_errors_batch(sampler, G))
        B = _fold_blocks(G, interval)
        if not np.isfinite(B).all():
            raise _CocycleOverflow("block product overflow")
        max_block_err = max(max_block_err, _form_errors_batch(sampler, B))
        Brep = B if ext_k is None else exterior_power_matrix(B, ext_k)
        for i in range(B.shape[0]):
            Q, R = np.linalg.qr(Brep[i] @ Q)
            live = seen >= warmup   # warmup is a multiple of interval
            if live:
                logd = np.log(np.abs(np.diagonal(R)))
                if not np.isfinite(logd).all():
                    raise _CocycleOverflow("degenerate QR factor")
                acc += logd
            if track_standard:
                Qs, Rs = np.linalg.qr(B[i] @ Qs)
                if live:
                    logs = np.log(np.abs(np.diagonal(Rs)))
                    if not np.isfinite(logs).all():
                        raise _CocycleOverflow("degenerate QR factor (standard track)")
                    accs += logs
            seen += min(interval, steps - seen)
    return (acc / window, accs / window if track_standard else None,
            max_sample_err, max_block_err)


def _aggregate(per_trial: np.ndarray, trials: int):
    means = per_trial.mean(axis=0)
    if trials >= 2:
        stderr = per_trial.std(axis=0, ddof=1) / np.sqrt(trials)
    else:
        stderr = np.zeros_like(means)
    order = np.argsort(-means, kind="stable")
    return means[order], stderr[order], order


def _realify(arr: np.ndarray, factor: int) -> np.ndarray:
    return np.repeat(arr, factor, axis=-1)


def _floats(arr) -> tuple[float, ...]:
    return tuple(float(x) for x in arr)


def lyapunov_spectrum(config: SimConfig, track_standard: bool | None = None) -> LyapunovResult:
    """Estimate the Lyapunov spectrum of the random cocycle in ``config``.

    Returns exponents on the realified space: for su and so* every complex
    exponent is reported twice, so counts line up with real dimensions.
    Exterior-power cocycles act by compound matrices of the standard-rep
    blocks; ``track_standard`` (default: on for exterior powers) also
    estimates the standard spectrum from the same sampled elements.
    """
    rep = config.rep
    if rep.kind is RepKind.EXTERIOR and config.form.family not in (Family.SU, Family.SO_STAR):
        raise UnsupportedFeatureError(
            "exterior-power simulation is supported for the su and so* families only")
    ext_k = None
    if rep.kind is RepKind.EXTERIOR:
        d = config.form.matrix_dim
        if not 1 <= rep.degree <= d:
            raise ParameterError(f"exterior degree {rep.degree} out of range 1..{d}")
        ext_k = rep.degree
    if track_standard is None:
        track_standard = ext_k is not None

    t0 = time.perf_counter()
    try:
        out = _run_all_trials(config, ext_k, config.renorm_interval, track_standard)
        interval_used = config.renorm_interval
    except _CocycleOverflow:
        half = config.renorm_interval // 2
        if half < 1:
            raise NumericalError("cocycle overflow at renorm_interval 1",
                                 {"config": repr(config)}) from None
        try:
            out = _run_all_trials(config, ext_k, half, track_standard)
            interval_used = half
        except _CocycleOverflow as exc:
            raise NumericalError(
                "cocycle overflow persists after halving renorm_interval",
                {"config": repr(config), "retry_interval": half,
                 "failure": str(exc)}) from None
    per_trial, per_trial_std, sample_err, block_err = out

    factor = config.form.real_factor
    means, stderr, order = _aggregate(per_trial, config.trials)
    real_means = _realify(means, factor)
    real_stderr = _realify(stderr, factor)
    trial_rows = tuple(_floats(_realify(row[order], factor)) for row in per_trial)
    cluster = classify_zero_cluster(real_means, real_stderr, config.zero_threshold)

    std_means = std_stderr = None
    if track_standard:
        if per_trial_std is None:
            std_means, std_stderr = means, stderr
        else:
            sm, ss, _ = _aggregate(per_trial_std, config.trials)
            std_means, std_stderr = sm, ss

    return LyapunovResult(
        config=config,
        exponents=_floats(real_means), stderr=_floats(real_stderr),
        complex_exponents=_floats(means), complex_stderr=_floats(stderr),
        trial_exponents=trial_rows,
        zero_cluster=cluster,
        standard_exponents=_floats(std_means) if std_means is not None else None,
        standard_stderr=_floats(std_stderr) if std_stderr is not None else None,
        max_sample_form_error=float(sample_err),
        max_block_form_error=float(block_err),
        renorm_interval_used=interval_used,
        elapsed_seconds=time.perf_counter() - t0)


def _run_all_trials(config: SimConfig, ext_k: int | None, interval: int,
                    track_standard: bool):
    sampler = lie_algebra_basis(config.form, config.scale)
    rows = []
    rows_std = []
    sample_err = 0.0
    block_err = 0.0
    track_inner = track_standard and ext_k is not None
    warmup = config.resolved_warmup(interval)
    for trial in range(config.trials):
        rng = _trial_rng(config.master_seed, trial)
        acc, acc_std, serr, berr = _run_trial(
            sampler, ext_k, config.steps, warmup, interval, rng, track_inner)
        rows.append(acc)
        if track_inner:
            rows_std.append(acc_std)
        sample_err = max(sample_err, serr)
        block_err = max(block_err, berr)
    per_trial = np.stack(rows)
    per_trial_std = np.stack(rows_std) if rows_std else None
    return per_trial, per_trial_std, sample_err, block_err


def estimate_lyapunov_vector(form: RealFormSpec,
                             standard_complex_exponents) -> LyapunovVector:
    """Read the Lyapunov vector off a standard-representation spectrum.

    The descending complex exponent list is aligned positionally with the
    canonical order of the standard restricted weights, and the entries at
    the positions of each f_i are averaged.
    """
    ms = weights_restricted(form, RepSpec.standard())
    flat = ms.expand()
    exps = [float(x) for x in standard_complex_exponents]
    if len(flat) != len(exps):
        raise ParameterError(
            f"expected {len(flat)} standard exponents, got {len(exps)}")
    rank = form.restricted_rank
    values = []
    for i in range(rank):
        f_i = Weight.unit(rank, i, flat[0].basis)
        at = [exps[j] for j, w in enumerate(flat) if w == f_i]
        values.append(sum(at) / len(at))
    return LyapunovVector(tuple(values))


@dataclass(frozen=True, eq=False)
class VerdictReport:
    """Outcome of comparing a simulation against a prediction."""

    verdict: str                 # "match" | "mismatch" | "inconclusive"
    details: tuple[str, ...]
    prediction: SpectrumPrediction
    result: LyapunovResult
    lambda_hat: LyapunovVector | None
    expected_exponents: tuple[float, ...] | None

    def as_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "details": list(self.details),
            "prediction": self.prediction.as_record(),
            "result": self.result.as_record(),
            "lambda_hat": list(self.lambda_hat.values) if self.lambda_hat else None,
            "expected_exponents_real": (list(self.expected_exponents)
                                        if self.expected_exponents else None),
        }


def verify_prediction(config: SimConfig, prediction: SpectrumPrediction) -> VerdictReport:
    """Run the cocycle and compare against the predicted spectrum.

    Match requires the zero cluster to have exactly the predicted real
    size and the full spectrum to agree, exponent by exponent, with the
    restricted weights evaluated at the estimated Lyapunov vector, within
    max(0.05 * lambda_max, 3 * stderr_i).
    """
    if prediction.form != config.form or prediction.rep != config.rep:
        raise ParameterError("prediction and config describe different pairs")
    result = lyapunov_spectrum(config, track_standard=True)
    details = []
    cluster = result.zero_cluster
    if cluster.status != "ok":
        return VerdictReport("inconclusive", (f"zero cluster: {cluster.reason}",),
                             prediction, result, None, None)
    verdict = "match"
    if cluster.size != prediction.zero_count_real:
        verdict = "mismatch"
        details.append(f"zero cluster size {cluster.size} != predicted "
                       f"{prediction.zero_count_real}")
    else:
        details.append(f"zero cluster size {cluster.size} as predicted")

    std = result.standard_exponents
    if std is None:
        std = result.complex_exponents
    try:
        lam_hat = estimate_lyapunov_vector(config.form, std)
    except ParameterError as exc:
        return VerdictReport("inconclusive",
                             tuple(details) + (f"Lyapunov vector estimate failed: {exc}",),
                             prediction, result, None, None)
    expected = evaluate_spectrum(realified_weights(config.form, config.rep), lam_hat)
    lam_max = result.exponents[0]
    worst = 0.0
    structure_ok = True
    for sim, exp_v, se in zip(result.exponents, expected, result.stderr):
        tol = max(0.05 * lam_max, 3 * se)
        dev = abs(sim - exp_v)
        worst = max(worst, dev)
        if dev > tol:
            structure_ok = False
    if structure_ok:
        details.append(f"spectrum matches weight evaluation (max deviation {worst:.2e})")
    else:
        verdict = "mismatch"
        details.append(f"spectrum deviates from weight evaluation by {worst:.2e}")
    return VerdictReport(verdict, tuple(details), prediction,
                         replace(result, verdict=verdict), lam_hat,
                         tuple(expected))


@dataclass(frozen=True, eq=False)
class ExteriorConsistencyReport:
    """Exterior-power exponents versus k-subset sums of standard ones."""

    matched: bool
    max_deviation: float
    subset_sums: tuple[float, ...]
    direct: tuple[float, ...]
    tolerances: tuple[float, ...]
    standard_result: tuple[float, ...]

    def as_record(self) -> dict:
        return {
            "matched": self.matched,
            "max_deviation": self.max_deviation,
            "subset_sums": list(self.subset_sums),
            "direct_exterior": list(self.direct),
            "tolerances": list(self.tolerances),
            "standard_complex_exponents": list(self.standard_result),
        }


def exterior_consistency_check(form: RealFormSpec, k: int,
                               config: SimConfig) -> ExteriorConsistencyReport:
    """Compare directly simulated exterior-power exponents with k-subset
    sums of the standard-representation exponents (complex counting).

    Both spectra come from the same sampled group elements. Per-exponent
    tolerance is max(0.05 * lambda_max, 3 * combined stderr).
    """
    if form.family not in (Family.SU, Family.SO_STAR):
        raise UnsupportedFeatureError(
            "exterior consistency check applies to the su and so* families")
    cfg = replace(config, form=form, rep=RepSpec.exterior(k))
    result = lyapunov_spectrum(cfg, track_standard=True)
    std = np.asarray(result.standard_exponents)
    std_err = np.asarray(result.standard_stderr)
    sums = []
    for subset in k_subsets(len(std), k):
        sums.append((float(sum(std[list(subset)])),
                     float(sum(std_err[list(subset)]))))
    sums.sort(key=lambda t: -t[0])
    direct = np.asarray(result.complex_exponents)
    lam_max = float(np.abs(direct).max())
    matched = True
    worst = 0.0
    tols = []
    for (s, s_err), dval, derr in zip(sums, direct, result.complex_stderr):
        tol = max(0.05 * lam_max, 3 * (s_err + derr))
        tols.append(tol)
        dev = abs(s - dval)
        worst = max(worst, dev)
        if dev > tol:
            matched = False
    return ExteriorConsistencyReport(
        matched=matched, max_deviation=worst,
        subset_sums=tuple(s for s, _ in sums),
        direct=tuple(float(x) for x in direct),
        tolerances=tuple(tols),
        standard_result=tuple(float(x) for x in std))
