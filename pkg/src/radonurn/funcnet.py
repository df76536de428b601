"""Functional nets: decide whether a convex body is eps-light from a stored
sample and separation-oracle queries only.

A query repeatedly computes an approximate centerpoint of the active part
of the sample and asks the oracle about it. Any point inside the body is a
witness of (possible) heaviness; otherwise the separating halfspace prunes
the active set. When the active set has shrunk to ``eps/8`` of the sample
the body is reported light, which is always correct when the sample is a
relative approximation for intersections of halfspaces.
"""
from dataclasses import asdict, dataclass, field
import json
import math
import warnings

import numpy as np

from ._rng import child_seed, make_rng
from .centerpoint import SampleSizeWarning, approx_centerpoint
from .errors import DomainError, IterationBudgetExceeded, OracleContractViolation
from .geometry import Halfspace, as_point, as_points

NET_FORMAT = "radonurn.funcnet"
NET_VERSION = 1

HEAVY = "Heavy"
LIGHT = "Light"


def funcnet_sample_size(d, eps, phi, c_s=1.0):
    """``c_s (eps^-1 d^3 ln d ln^3(1/eps) + eps^-1 ln(1/phi))``, at least 1."""
    L = math.log(1.0 / eps)
    return max(1, math.ceil(c_s * (d**3 * math.log(d) * L**3 + math.log(1.0 / phi)) / eps))


def success_bound(d, eps):
    """Smallest ``k`` with ``(1 - gamma)^k <= eps/8``."""
    gamma = 1.0 / (16.0 * d**2)
    return math.ceil(math.log(eps / 8.0) / math.log1p(-gamma))


@dataclass(frozen=True)
class FuncNetParams:
    d: int
    eps: float
    phi: float
    gamma: float
    stop_fraction: float
    tau: int
    vc_dim_D: float
    sample_size: int
    c_s: float = 1.0
    c_tau: float = 32.0

    @classmethod
    def create(cls, d, eps, phi, c_s=1.0, c_tau=32.0):
        if not 0.0 < eps < 1.0 or not 0.0 < phi < 1.0:
            raise DomainError("eps and phi must lie in (0, 1)")
        L = math.log(1.0 / eps)
        return cls(
            d=d,
            eps=eps,
            phi=phi,
            gamma=1.0 / (16.0 * d**2),
            stop_fraction=eps / 8.0,
            tau=math.ceil(c_tau * d**2 * math.log(8.0 / eps)),
            vc_dim_D=d**3 * max(math.log(d), 1.0) * L**2,
            sample_size=funcnet_sample_size(d, eps, phi, c_s),
            c_s=c_s,
            c_tau=c_tau,
        )

    @property
    def stop_threshold(self):
        return math.ceil(self.stop_fraction * self.sample_size)


@dataclass(frozen=True)
class FuncNet:
    params: FuncNetParams
    sample: np.ndarray

    @property
    def dim(self):
        return self.params.d

    def to_json(self):
        return json.dumps(
            {
                "format": NET_FORMAT,
                "version": NET_VERSION,
                "params": asdict(self.params),
                "sample": self.sample.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if data.get("format") != NET_FORMAT or data.get("version") != NET_VERSION:
            raise DomainError("not a version-1 functional net file")
        params = FuncNetParams(**data["params"])
        return cls(params, as_points(data["sample"], params.d))


@dataclass
class QueryTranscript:
    verdict: str
    queries: list = field(default_factory=list)
    witness: int | None = None
    oracle_calls: int = 0
    successful: list = field(default_factory=list)
    committed: list = field(default_factory=list)
    final_active: int = 0

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "oracle_calls": self.oracle_calls,
            "successful": self.successful,
            "final_active": self.final_active,
            "queries": [q.tolist() for q in self.queries],
            "committed": [h.to_dict() for h in self.committed],
        }


def build_funcnet(P, eps, phi, seed, c_s=1.0, c_tau=32.0):
    """Draw the net sample: ``sample_size`` uniform draws from ``P`` with replacement."""
    X = as_points(P)
    params = FuncNetParams.create(X.shape[1], eps, phi, c_s, c_tau)
    rng = make_rng(seed)
    return FuncNet(params, X[rng.integers(0, X.shape[0], size=params.sample_size)])


def query_funcnet(net, oracle, seed=0, eps_b=0.5):
    """Run the adaptive query process against a separation ``oracle``.

    ``oracle(q)`` returns ``None`` when ``q`` is in the body, else a
    :class:`Halfspace` containing the body but not ``q``. A round is kept
    only if it removes at least a ``gamma`` fraction of the active points.
    """
    p = net.params
    rng = make_rng(seed)
    active = net.sample
    threshold = p.stop_threshold
    tr = QueryTranscript(verdict=LIGHT)
    budget = 16 * p.tau
    attempt = 0
    while active.shape[0] > threshold:
        if attempt >= budget:
            tr.final_active = active.shape[0]
            raise IterationBudgetExceeded(f"no verdict after {attempt} oracle queries", partial=tr)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SampleSizeWarning)
            q = approx_centerpoint(active, eps_b, 0.25, child_seed(rng)).point
        tr.queries.append(q)
        tr.oracle_calls += 1
        h = oracle(q)
        if h is None:
            tr.verdict = HEAVY
            tr.witness = attempt
            tr.final_active = active.shape[0]
            return tr
        if not isinstance(h, Halfspace) or h.dim != p.d:
            raise OracleContractViolation("oracle must return None or a Halfspace of matching dimension")
        if not float(h.normal @ as_point(q)) < h.offset:
            raise OracleContractViolation("returned halfspace does not exclude the query point")
        keep = active @ h.normal >= h.offset
        if active.shape[0] - np.count_nonzero(keep) >= p.gamma * active.shape[0]:
            active = active[keep]
            tr.successful.append(attempt)
            tr.committed.append(h)
        attempt += 1
    tr.final_active = active.shape[0]
    return tr
