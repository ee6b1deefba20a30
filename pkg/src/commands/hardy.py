"""hardy 명령: 가우시안 감쇠율 곱, 임계 영역 재구성, ψ 기저 분류, 두 가우시안 증인"""

import logging
from typing import List

import numpy as np

from src.commands.context import CommandContext, checked, failed_row
from src.core.config import get_settings
from src.core.errors import CliffordToolkitError, FitError
from src.models.common import CheckRow
from src.models.config import RunConfig
from src.models.poly import Parity
from src.models.uncertainty import HardyRegime
from src.services.cft import inverse_check
from src.services.grid_transform import sample
from src.services.poly_ops import monogenic_basis, psi_basis_element
from src.services.uncertainty import fit_gaussian_decay, hardy_verify, two_gaussian_witness

logger = logging.getLogger(__name__)

GAUSSIAN_RATES = (0.25, 0.5, 1.0, 2.0)
PSI_MAX_ORDER = 2
PSI_SCALE = 2.0


def _rates(config: RunConfig) -> List[float]:
    rates = list(GAUSSIAN_RATES)
    if config.p not in rates:
        rates.append(config.p)
    return rates


def _gaussian_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    for p in _rates(ctx.config):
        field = sample(lambda pts: np.exp(-p * np.sum(pts**2, axis=1)), ctx.grid)
        info = dict(ctx.grid.describe(), p=p, sign=ctx.sign.value)

        try:
            verdict = hardy_verify(field, ctx.engine.transform, ctx.sign)
        except CliffordToolkitError as e:
            failed_row(rows, f"hardy.product.p{p:g}", 1e-3, info, e)
            continue
        fitted = {"p_fit": verdict.p, "q_fit": verdict.q, "regime": verdict.regime.value}
        checked(rows, f"hardy.product.p{p:g}", 1e-3, dict(info, **fitted), lambda: abs(verdict.product - 0.25) / 0.25)

        def reconstruction():
            if verdict.gaussian_residual is None:
                raise FitError(f"p={p} was not classified critical (pq={verdict.product:.6g})")
            return verdict.gaussian_residual, None, {"grades": verdict.grade_content}

        checked(rows, f"hardy.reconstruction.p{p:g}", 1e-5, info, reconstruction)

        if p == ctx.config.p and ctx.config.plotdata:
            try:
                ctx.add_plot(f"hardy_p{p:g}", field, fit_gaussian_decay(field))
            except FitError as e:
                logger.warning(f"No decay overlay for p={p}: {e}")


def _psi_indices() -> List[tuple]:
    out = []
    for j in range(PSI_MAX_ORDER + 1):
        for k in range(PSI_MAX_ORDER + 1 - j):
            for l in range(len(monogenic_basis(2, k))):  # noqa: E741
                out.append((j, k, l))
    return out


def _psi_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    ceiling = 0.25 * (1.0 + get_settings().CRITICAL_TOLERANCE)
    for j, k, l in _psi_indices():  # noqa: E741
        psi = psi_basis_element(2, j, k, l, Parity.EVEN)
        field = sample(psi, ctx.grid)
        info = dict(ctx.grid.describe(), j=j, k=k, l=l, sign=ctx.sign.value)

        def classify():
            verdict = hardy_verify(field, ctx.engine.transform, ctx.sign)
            return verdict.product, verdict.product <= ceiling, {"regime": verdict.regime.value}

        checked(rows, f"hardy.psi.j{j}.k{k}.l{l}", ceiling, info, classify)
        checked(
            rows,
            f"hardy.psi_inverse.j{j}.k{k}.l{l}",
            1e-4,
            info,
            lambda: inverse_check(field, ctx.sign, ctx.engine.transform),
        )

    # ψ(x/σ) 는 감쇠율이 σ^{-2} 배로 바뀌지만 곱은 그대로
    psi = psi_basis_element(2, 1, 1, 0, Parity.EVEN)
    scaled = sample(lambda pts: psi(pts / PSI_SCALE), ctx.grid)
    checked(
        rows,
        f"hardy.psi_scaled.sigma{PSI_SCALE:g}",
        ceiling,
        dict(ctx.grid.describe(), j=1, k=1, l=0, sigma=PSI_SCALE),
        lambda: hardy_verify(scaled, ctx.engine.transform, ctx.sign).product,
        gating=False,
    )


def _witness_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    field = sample(two_gaussian_witness(), ctx.grid)

    def subcritical():
        verdict = hardy_verify(field, ctx.engine.transform, ctx.sign)
        extra = {"p_fit": verdict.p, "q_fit": verdict.q, "regime": verdict.regime.value}
        return verdict.product, verdict.regime is HardyRegime.SUBCRITICAL, extra

    checked(rows, "hardy.two_gaussian", 0.25, ctx.grid.describe(), subcritical)
    ctx.add_plot("hardy_two_gaussian", field)


def hardy_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    rows: List[CheckRow] = []
    _gaussian_rows(ctx, rows)
    _psi_rows(ctx, rows)
    _witness_rows(ctx, rows)
    logger.info(f"Hardy checks: {sum(r.passed for r in rows)}/{len(rows)} passed")
    return rows
