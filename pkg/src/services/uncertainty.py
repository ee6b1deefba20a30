"""불확정성 원리 검증기: 가우시안 감쇠 적합, Hardy, Miyachi, r 거듭제곱 따름정리, 다항식-가우시안 상

유한 격자는 발산을 증명할 수 없으므로 "적분이 무한" 은 정육면체 반폭 R' 스윕에서의 증가로 판정한다.
"""

import logging
import math
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.config import get_settings
from src.core.errors import (
    FitError,
    GridResolutionError,
    HypothesisError,
    InvalidParameterError,
    TrustRegionError,
    UnsupportedDimensionError,
    ZeroFieldError,
)
from src.models.grid import GridSpec
from src.models.transform import KernelSign
from src.models.uncertainty import (
    CorollaryReport,
    DecayFit,
    FunctionalEstimate,
    HardyRegime,
    HardyVerdict,
    MiyachiConclusion,
    MiyachiReport,
    PolynomialImageReport,
)
from src.services.cft import TransformFn, gaussian_weight_bounded
from src.services.clifford_core import Multivector, grade_norms
from src.services.grid_transform import FieldFunction, SampledField, b_norm, sample
from src.services.heat import heat_kernel_values
from src.services.poly_ops import PolyField, exponents_up_to
from src.services.transform_engine import create_transform_engine

logger = logging.getLogger(__name__)

FIT_INNER_RADIUS = 1.0
TRUNCATION_NOISE_FACTOR = 1e3
AMPLITUDE_TOLERANCE = 1e-6
SIGNIFICANT_TERM = 1e-6
DIVERGENCE_FACTOR = 2.0
STABILITY_FRACTION = 0.01
MAX_IMAGE_DEGREE = 4


def _require_m2(field: SampledField) -> None:
    if field.m != 2:
        raise UnsupportedDimensionError(f"uncertainty verifiers need the m=2 transform, got m={field.m}")


def _resolve(transform: Optional[TransformFn], sign: Union[KernelSign, str, None]) -> Tuple[TransformFn, KernelSign]:
    transform = transform or create_transform_engine()
    sign = KernelSign(sign or get_settings().KERNEL_SIGN)
    return transform, sign


def fit_gaussian_decay(
    f: SampledField,
    floor: Optional[float] = None,
    min_nodes: Optional[int] = None,
) -> DecayFit:
    """||x|| >= 1 이고 ||f|| >= floor * max 인 점에서 log||f|| 를 ||x||^2 에 대해 최소제곱 적합"""
    settings = get_settings()
    floor = settings.DECAY_FIT_FLOOR if floor is None else floor
    min_nodes = settings.DECAY_FIT_MIN_NODES if min_nodes is None else min_nodes

    norms = f.norms().reshape(-1)
    scale = float(np.max(norms))
    if scale == 0.0:
        raise ZeroFieldError("cannot fit a Gaussian decay to the zero field")
    r2 = f.grid.radii_squared().reshape(-1)
    mask = (r2 >= FIT_INNER_RADIUS**2) & (norms >= floor * scale)
    nodes = int(np.count_nonzero(mask))
    if nodes < min_nodes:
        raise FitError(f"only {nodes} annulus nodes above the noise floor, need {min_nodes}")

    log_norms = np.log(norms[mask])
    design = np.stack([np.ones(nodes), -r2[mask]], axis=1)
    (log_c, p), *_ = np.linalg.lstsq(design, log_norms, rcond=None)
    deviation = np.abs(log_norms - (log_c - p * r2[mask]))
    residual = float(np.max(deviation) / max(float(np.max(np.abs(log_norms))), 1.0))
    logger.debug(f"Decay fit: C={np.exp(log_c):.6g}, p={p:.10g}, residual={residual:.3e}, nodes={nodes}")
    return DecayFit(C=float(np.exp(log_c)), p=float(p), residual=residual, nodes=nodes)


def transform_noise_floor(f: SampledField, floor: Optional[float] = None) -> float:
    """F(f) 적합에 쓸 상대 잡음 바닥

    격자 경계에서 잘린 f 의 크기가 변환 절단 오차를 정하므로 그 1e3 배 아래는 믿지 않는다.
    """
    base = get_settings().DECAY_FIT_FLOOR if floor is None else floor
    norms = f.norms()
    scale = float(np.max(norms))
    if scale == 0.0:
        return base
    ring = np.zeros(norms.shape, dtype=bool)
    for axis in range(norms.ndim):
        for edge in (0, -1):
            index = [slice(None)] * norms.ndim
            index[axis] = edge
            ring[tuple(index)] = True
    return max(base, TRUNCATION_NOISE_FACTOR * float(np.max(norms[ring])) / scale)


def fit_amplitude(f: SampledField, profile: np.ndarray) -> Tuple[Multivector, float]:
    """f ≈ A φ 인 다중벡터 상수 A 와 ||f - A φ||_∞ / ||f||_∞"""
    weights = np.asarray(profile, dtype=np.float64).reshape(-1)
    values = f.flat_values()
    coeffs = weights @ values / float(np.sum(weights**2))
    scale = f.max_norm()
    misfit = values - weights[:, None] * coeffs[None, :]
    residual = float(np.max(np.linalg.norm(misfit, axis=1)) / scale) if scale > 0 else 0.0
    return Multivector(f.m, coeffs), residual


def classify_regime(product: float, tolerance: Optional[float] = None) -> HardyRegime:
    """1/4 과의 상대 오차 CRITICAL_TOLERANCE 이내면 임계"""
    tolerance = get_settings().CRITICAL_TOLERANCE if tolerance is None else tolerance
    if abs(product - 0.25) <= tolerance * 0.25:
        return HardyRegime.CRITICAL
    return HardyRegime.SUPERCRITICAL if product > 0.25 else HardyRegime.SUBCRITICAL


def hardy_verify(
    f: SampledField,
    transform: Optional[TransformFn] = None,
    sign: Union[KernelSign, str, None] = None,
) -> HardyVerdict:
    _require_m2(f)
    transform, sign = _resolve(transform, sign)
    if not math.isfinite(b_norm(f)):
        raise HypothesisError("f has no finite B-norm on the grid")

    fit_f = fit_gaussian_decay(f)
    image = transform(f, sign).field
    fit_g = fit_gaussian_decay(image, floor=transform_noise_floor(f))
    product = fit_f.p * fit_g.p
    regime = classify_regime(product)

    gaussian_residual = None
    amplitude = None
    grade_content = None
    if regime is HardyRegime.CRITICAL:
        profile = np.exp(-fit_f.p * f.grid.radii_squared())
        constant, gaussian_residual = fit_amplitude(f, profile)
        amplitude = constant.coeffs.tolist()
        grade_content = grade_norms(constant)

    logger.info(
        f"Hardy: p={fit_f.p:.8g}, q={fit_g.p:.8g}, pq={product:.8g} -> {regime.value}"
        + (f", gaussian residual={gaussian_residual:.3e}" if gaussian_residual is not None else "")
    )
    return HardyVerdict(
        p=fit_f.p,
        q=fit_g.p,
        product=product,
        regime=regime,
        gaussian_residual=gaussian_residual,
        amplitude=amplitude,
        grade_content=grade_content,
        fit_residual_f=fit_f.residual,
        fit_residual_transform=fit_g.residual,
    )


def two_gaussian_witness() -> FieldFunction:
    """e^{-||x||^2} + e^{-||x||^2/4}: 감쇠율 곱이 1/4 보다 작은 영이 아닌 함수"""

    def evaluate(points: np.ndarray) -> np.ndarray:
        r2 = np.sum(points**2, axis=1)
        return np.exp(-r2) + np.exp(-r2 / 4.0)

    return evaluate


def polynomial_gaussian_image(
    P: PolyField,
    delta: float,
    grid: GridSpec,
    transform: Optional[TransformFn] = None,
    sign: Union[KernelSign, str, None] = None,
) -> PolynomialImageReport:
    """F(P e^{-δ||x||^2}) = Q e^{-||y||^2/4δ} 의 Q 를 신뢰 영역에서 적합

    적합은 변환 공간에서 y^α e^{-||y||^2/4δ} 기저로 하고 차수 deg P + 1 까지 열어 둔다.
    기여가 max||F|| 의 1e-6 이하인 항은 Q 에서 뺀다.
    """
    if grid.m != 2 or P.m != 2:
        raise UnsupportedDimensionError("polynomial_gaussian_image needs m=2")
    if P.is_zero() or P.degree > MAX_IMAGE_DEGREE:
        raise InvalidParameterError(f"P must be nonzero with degree <= {MAX_IMAGE_DEGREE}, got {P.degree}")
    if not 0.125 <= delta <= 2.0:
        raise InvalidParameterError(f"delta must lie in [1/8, 2], got {delta}")
    transform, sign = _resolve(transform, sign)
    settings = get_settings()

    field = sample(lambda pts: P.evaluate(pts) * np.exp(-delta * np.sum(pts**2, axis=1))[:, None], grid)
    image = transform(field, sign).field.flat_values()
    points = grid.points()
    envelope = np.exp(-np.sum(points**2, axis=1) / (4.0 * delta))

    exponents = exponents_up_to(2, P.degree + 1)
    trust = envelope >= settings.TRUST_REGION_FLOOR
    trust_nodes = int(np.count_nonzero(trust))
    if trust_nodes < 10 * len(exponents):
        raise TrustRegionError(
            f"trust region holds {trust_nodes} nodes, need {10 * len(exponents)} for {len(exponents)} monomials"
        )

    design = np.stack(
        [np.prod(points ** np.array(alpha), axis=1) * envelope for alpha in exponents], axis=1
    )
    coeffs, *_ = np.linalg.lstsq(design[trust], image[trust], rcond=None)

    scale = float(np.max(np.linalg.norm(image, axis=1)))
    reach = np.max(np.abs(design[trust]), axis=0)
    significant = {
        alpha: coeffs[idx]
        for idx, alpha in enumerate(exponents)
        if reach[idx] * float(np.linalg.norm(coeffs[idx])) > SIGNIFICANT_TERM * scale
    }
    Q = PolyField(2, significant)
    misfit = image - Q.evaluate(points) * envelope[:, None]
    residual = float(np.max(np.linalg.norm(misfit, axis=1)) / scale)

    logger.info(
        f"Polynomial image: deg P={P.degree}, deg Q={Q.degree}, delta={delta}, "
        f"residual={residual:.3e}, trust nodes={trust_nodes}"
    )
    return PolynomialImageReport(
        degree_p=P.degree,
        degree_q=Q.degree,
        degree_match=Q.degree == P.degree,
        residual=residual,
        delta=delta,
        trust_nodes=trust_nodes,
        q_coefficients={",".join(map(str, alpha)): c.tolist() for alpha, c in Q.terms.items()},
        q_fit=Q,
    )


def _weighted_log_norms(
    g: SampledField, b: float, floor: Optional[float] = None
) -> Tuple[np.ndarray, Optional[DecayFit], int]:
    """log(e^{b||y||^2} ||g(y)||), 잡음 바닥 아래 점은 적합 모델 log C - q||y||^2 로 대체"""
    floor = get_settings().FUNCTIONAL_NOISE_FLOOR if floor is None else floor
    r2 = g.grid.radii_squared()
    norms = g.norms()
    with np.errstate(divide="ignore"):
        log_norms = np.log(norms)
    if not np.any(norms):
        return np.full(norms.shape, -np.inf), None, 0

    try:
        fit = fit_gaussian_decay(g, floor=floor)
    except FitError as e:
        logger.warning(f"No decay model for the transform, samples below the floor count as zero: {e}")
        fit = None
    below = norms < floor * float(np.max(norms))
    floor_nodes = int(np.count_nonzero(below))
    if fit is not None:
        log_norms = np.where(below, fit.log_model(r2), log_norms)
    else:
        log_norms = np.where(below, -np.inf, log_norms)
    return log_norms + b * r2, fit, floor_nodes


def _sweep_radii(grid: GridSpec, radii: Optional[Sequence[float]] = None) -> list:
    radii = list(radii) if radii is not None else get_settings().sweep_radii()
    usable = sorted(r for r in radii if r <= grid.R * (1.0 + 1e-12))
    if len(usable) < 2:
        raise GridResolutionError(f"R-sweep needs two radii within the grid half-width {grid.R}, got {radii}")
    return usable


def _cube_masks(grid: GridSpec, radii: Sequence[float]) -> Dict[str, np.ndarray]:
    """반폭 R' 정육면체 max|x_i| <= R' 안의 점"""
    reach = np.max(np.abs(grid.points()), axis=1).reshape(grid.shape)
    return {f"{r:g}": reach <= r for r in radii}


def _sweep_verdict(sweep: Dict[str, float]) -> Tuple[bool, bool, Optional[float]]:
    """(안정, 발산, 끝값/첫값)"""
    values = list(sweep.values())
    first, last = values[0], values[-1]
    if last <= get_settings().FUNCTIONAL_ZERO_TOLERANCE:
        return True, False, None
    ratio = last / first if first > 0 else None
    divergent = last >= DIVERGENCE_FACTOR * first
    stable = abs(last - first) <= STABILITY_FRACTION * last
    return stable, divergent, ratio


def _log_plus_tail(fit: Optional[DecayFit], b: float, lam: float, radius: float) -> float:
    """정육면체 밖 (원판 밖으로 근사) log⁺ 꼬리, 적합 감쇠 모델로 계산"""
    if fit is None:
        return 0.0
    tolerance = get_settings().CRITICAL_TOLERANCE
    kappa = fit.p - b
    level = math.log(fit.C / lam)
    if abs(kappa) <= tolerance * b:
        return 0.0 if level <= tolerance else math.inf
    if kappa < 0:
        return math.inf
    edge = level / kappa
    if edge <= radius * radius:
        return 0.0
    # ∫_{R}^{ρ*} 2πρ (level - κρ^2) dρ, u = ρ^2
    u0 = radius * radius
    return float(math.pi * ((level * edge - 0.5 * kappa * edge * edge) - (level * u0 - 0.5 * kappa * u0 * u0)))


def miyachi_functional(
    g: SampledField,
    b: float,
    lam: float,
    floor: Optional[float] = None,
    radii: Optional[Sequence[float]] = None,
) -> FunctionalEstimate:
    """∫ log⁺(||e^{b||y||^2} g(y)|| / λ) dy 의 격자 정육면체 값, 반폭 스윕, 꼬리 추정"""
    if b <= 0 or lam <= 0:
        raise InvalidParameterError(f"b and lambda must be positive, got b={b}, lambda={lam}")
    log_weighted, fit, floor_nodes = _weighted_log_norms(g, b, floor)
    integrand = np.maximum(log_weighted - math.log(lam), 0.0)
    weight = g.grid.weight
    value = float(np.sum(integrand) * weight)

    sweep = {}
    if radii is not None:
        for key, mask in _cube_masks(g.grid, _sweep_radii(g.grid, radii)).items():
            sweep[key] = float(np.sum(integrand[mask]) * weight)

    tail = _log_plus_tail(fit, b, lam, g.grid.R)
    logger.debug(f"Miyachi functional b={b}, lambda={lam}: value={value:.6g}, tail={tail}, sweep={sweep}")
    return FunctionalEstimate(value=value, tail=tail, floor_nodes=floor_nodes, sweep=sweep)


def critical_constant_bound(lam: float, m: int = 2) -> float:
    """f = C N_c(., b) 에서 log⁺ 피적분함수가 0 이 되는 |C| 의 상한 (2π)^{m/2} λ"""
    return (2.0 * math.pi) ** (m / 2.0) * lam


def miyachi_verify(
    f: SampledField,
    a: float,
    b: float,
    lam: float,
    transform: Optional[TransformFn] = None,
    sign: Union[KernelSign, str, None] = None,
) -> MiyachiReport:
    """가정 (e^{a||x||^2} f 유계) 확인 후 ab 영역별 결론과 관측의 일치 여부"""
    _require_m2(f)
    transform, sign = _resolve(transform, sign)
    linf_ok, l1_ok = gaussian_weight_bounded(f, a)
    if not (linf_ok or l1_ok):
        raise HypothesisError(f"e^(a|x|^2) f has neither a bounded nor an integrable witness for a={a}")

    regime = classify_regime(a * b)
    image = transform(f, sign).field
    floor = max(get_settings().FUNCTIONAL_NOISE_FLOOR, transform_noise_floor(f))
    estimate = miyachi_functional(image, b, lam, floor=floor, radii=_sweep_radii(f.grid))
    stable, divergent, ratio = _sweep_verdict(estimate.sweep)
    finite_flag = stable and estimate.finite

    constant = None
    constant_norm = None
    reason = None
    if f.is_zero():
        conclusion = MiyachiConclusion.ZERO
        passed = True
    elif regime is HardyRegime.SUPERCRITICAL:
        conclusion = MiyachiConclusion.ZERO
        passed = divergent or not estimate.finite
    elif regime is HardyRegime.CRITICAL:
        conclusion = MiyachiConclusion.GAUSSIAN_MULTIPLE
        profile = heat_kernel_values(f.m, b, f.grid.radii_squared())
        fitted, residual = fit_amplitude(f, profile)
        constant = fitted.coeffs.tolist()
        constant_norm = float(np.linalg.norm(fitted.coeffs))
        admissible = residual <= AMPLITUDE_TOLERANCE and constant_norm <= critical_constant_bound(lam, f.m) * (
            1.0 + 1e-9
        )
        passed = admissible if finite_flag else True
        if not finite_flag:
            reason = "log+ functional not finite on the R sweep, no constraint on C"
    elif finite_flag:
        conclusion = MiyachiConclusion.COUNTEREXAMPLE_FAMILY
        passed = True
    else:
        # 범함수 가정 불충족, 아임계 결론 없음
        conclusion = MiyachiConclusion.NO_CONCLUSION
        reason = "log+ functional not finite on the R sweep, input outside the subcritical family"
        passed = True

    logger.info(
        f"Miyachi a={a}, b={b}, lambda={lam}: {regime.value}, integral={estimate.value:.6g}, "
        f"tail={estimate.tail}, sweep={estimate.sweep}, conclusion={conclusion.value}, passed={passed}"
    )
    return MiyachiReport(
        a=a,
        b=b,
        lam=lam,
        integral=estimate.value,
        tail=estimate.tail,
        finite_flag=finite_flag,
        sweep=estimate.sweep,
        regime=regime,
        conclusion=conclusion,
        constant=constant,
        constant_norm=constant_norm,
        hypothesis_linf=linf_ok,
        hypothesis_l1=l1_ok,
        divergence_ratio=ratio,
        reason=reason,
        passed=passed,
    )


def _power_tail(fit: Optional[DecayFit], b: float, r: float, radius: float) -> float:
    """정육면체 밖 ∫ C^r e^{-rκ||y||^2} dy (κ = q - b), r = inf 이면 상한"""
    if fit is None:
        return 0.0
    kappa = fit.p - b
    if abs(kappa) <= get_settings().CRITICAL_TOLERANCE * b:
        return fit.C if math.isinf(r) else math.inf
    if kappa < 0:
        return math.inf
    if math.isinf(r):
        return fit.C * math.exp(-kappa * radius * radius)
    return float(math.pi * fit.C**r * math.exp(-r * kappa * radius * radius) / (r * kappa))


def corollary_64_check(
    f: SampledField,
    a: float,
    b: float,
    r: float,
    transform: Optional[TransformFn] = None,
    sign: Union[KernelSign, str, None] = None,
) -> CorollaryReport:
    """∫ ||F(f)(y)||^r e^{rb||y||^2} dy (r = inf 이면 상한) 의 유한성과 ab 영역 결론 비교

    ab >= 1/4 이면 영이 아닌 f 에 대해 발산해야 한다. 임계선의 r = inf 는 상한이 유계로 남는다.
    """
    _require_m2(f)
    if not r > 0:
        raise InvalidParameterError(f"exponent r must be positive, got {r}")
    transform, sign = _resolve(transform, sign)
    regime = classify_regime(a * b)

    if f.is_zero():
        expected = observed = "zero"
        integral = 0.0
        sweep = {f"{radius:g}": 0.0 for radius in _sweep_radii(f.grid)}
    else:
        if regime is HardyRegime.SUBCRITICAL:
            expected = "finite"
        elif math.isinf(r) and regime is HardyRegime.CRITICAL:
            expected = "bounded"
        else:
            expected = "divergent"

        image = transform(f, sign).field
        floor = max(get_settings().FUNCTIONAL_NOISE_FLOOR, transform_noise_floor(f))
        log_weighted, fit, _ = _weighted_log_norms(image, b, floor)
        masks = _cube_masks(f.grid, _sweep_radii(f.grid))
        if math.isinf(r):
            values = np.exp(log_weighted)
            integral = float(np.max(values))
            sweep = {key: float(np.max(values[mask])) for key, mask in masks.items()}
        else:
            values = np.exp(r * log_weighted)
            integral = float(np.sum(values) * f.grid.weight)
            sweep = {key: float(np.sum(values[mask]) * f.grid.weight) for key, mask in masks.items()}

        tail = _power_tail(fit, b, r, f.grid.R)
        stable, divergent, _ = _sweep_verdict(sweep)
        if divergent or math.isinf(tail):
            observed = "divergent"
        elif stable:
            observed = "finite"
        else:
            observed = "inconclusive"

    passed = observed == expected or (expected == "bounded" and observed == "finite")
    logger.info(
        f"Corollary a={a}, b={b}, r={r}: {regime.value}, integral={integral:.6g}, "
        f"expected={expected}, observed={observed}"
    )
    return CorollaryReport(
        a=a,
        b=b,
        r=r,
        integral=integral,
        sweep=sweep,
        regime=regime,
        expected=expected,
        observed=observed,
        passed=passed,
    )
