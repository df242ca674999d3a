"""Line-of-sight UAV-to-user link: distance, gain, SNR, BER and PER."""

import math

import numpy as np
from scipy.special import erfc

from models.geometry import BerModel, Point2D, RadioParams, UavPose
from models.scenario import Scenario
from services.errors import ChannelDomainError, InvalidGeometryError


def db_to_linear(db: float) -> float:
    """10^(db/10)."""
    if not math.isfinite(db):
        raise ValueError(f"dB value must be finite, got {db}")
    return 10.0 ** (db / 10.0)


def _squared_range(pose: UavPose, user: Point2D) -> float:
    if not pose.h > 0:
        raise InvalidGeometryError(f"UAV altitude must be positive, got {pose.h}")
    dx = pose.q.x - user.x
    dy = pose.q.y - user.y
    return dx * dx + dy * dy + pose.h * pose.h


def distance(pose: UavPose, user: Point2D) -> float:
    """Slant range from the hovering UAV to a ground user, in meters."""
    return math.sqrt(_squared_range(pose, user))


def channel_gain(pose: UavPose, user: Point2D, radio: RadioParams) -> float:
    """Free-space line-of-sight power gain beta0 / d^2."""
    return radio.beta0 / _squared_range(pose, user)


def snr(pose: UavPose, user: Point2D, radio: RadioParams) -> float:
    """Received SNR beta0 * Pt / (d^2 * sigma^2).

    Linear units throughout; radio parameters given in dB are converted when the
    experiment file is loaded.
    """
    return radio.beta0 * radio.pt / (_squared_range(pose, user) * radio.sigma2)


def q_function(x):
    """Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def ber(gamma: float, radio: RadioParams) -> float:
    """BPSK bit error rate at SNR `gamma` under the configured Q-function form."""
    if gamma < 0 or math.isnan(gamma):
        raise ChannelDomainError(f"SNR must be non-negative, got {gamma}")
    if radio.ber_model is BerModel.STANDARD_BPSK:
        arg = math.sqrt(2.0 * gamma)
    else:
        arg = 2.0 * math.sqrt(gamma)
    return float(q_function(arg))


def per(bit_error: float, radio: RadioParams) -> float:
    """1 - (1 - ber)^n, evaluated through log1p to keep tiny error rates exact."""
    if not 0.0 <= bit_error <= 1.0:
        raise ChannelDomainError(f"BER must lie in [0, 1], got {bit_error}")
    if bit_error == 1.0:
        return 1.0
    return float(-np.expm1(radio.n_bits * np.log1p(-bit_error)))


def packet_error_rate(pose: UavPose, user: Point2D, radio: RadioParams) -> float:
    """Per-slot loss probability of one user."""
    return per(ber(snr(pose, user, radio), radio), radio)


def packet_error_rates(scenario: Scenario, q: Point2D) -> np.ndarray:
    """PER of every user for a UAV hovering at `q`, vectorised over users."""
    if not scenario.h > 0:
        raise InvalidGeometryError(f"UAV altitude must be positive, got {scenario.h}")
    radio = scenario.radio
    users = np.array([u.as_tuple() for u in scenario.users], dtype=float)
    d2 = np.sum((users - np.array(q.as_tuple())) ** 2, axis=1) + scenario.h**2
    gamma = radio.beta0 * radio.pt / (d2 * radio.sigma2)
    if radio.ber_model is BerModel.STANDARD_BPSK:
        bit_errors = q_function(np.sqrt(2.0 * gamma))
    else:
        bit_errors = q_function(2.0 * np.sqrt(gamma))
    with np.errstate(divide="ignore"):
        rates = -np.expm1(radio.n_bits * np.log1p(-bit_errors))
    return np.clip(rates, 0.0, 1.0)
