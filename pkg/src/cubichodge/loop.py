"""Assembly and solution of the genus-g slice of the loop equation.

For each genus g the equation reads, identically in Theta,

    sum_i L_i dH_g/dz_i = RHS_g,
    L_i = derive^i(Theta) + sum_{j=1}^i C(i, j) P_{j-1, i-j+1},

with RHS_1 = Theta^2/16 - (1/16 - s1/24) Theta =: T and for g >= 2

    RHS_g = sum_i derive^{i+2}(T) dH_{g-1}/dz_i
          + 1/2 sum_{i,j} P_{i+1,j+1} (d2 H_{g-1}/dz_i dz_j
                + sum_{k=1}^{g-1} dH_k/dz_i dH_{g-k}/dz_j).

The Theta rows 1..3g-1 form an invertible triangular system for the
gradient of H_g; all remaining rows must be matched identically, which is
asserted after every solve.  H_g itself is recovered from the Euler
identity sum j z_j dH_g/dz_j = (2g-2) H_g, and for g = 1 from the closed
form (1/24) log z1 + (s1/24) z0.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from math import comb

from .jets import JetPoly
from .linsolve import TriangularSystem
from .ptensors import PTensorTable
from .ratio import Q, parse_q, qjson
from .sigma import SigmaPoly
from .theta import ThetaPoly

SOLVER_VERSION = "loop-solver-v1"


class LoopEquationError(ArithmeticError):
    """The assembled loop equation is internally inconsistent."""


@dataclass
class FreeEnergy:
    genus: int
    gradient: list
    body: JetPoly
    log_z1_coeff: object | None = None
    provenance: dict = field(default_factory=dict)

    def max_jet_index(self) -> int:
        return 3 * self.genus - 2 if self.genus >= 1 else 0

    def body_text(self) -> str:
        from .textform import free_energy_text

        return free_energy_text(self.genus, self.body, self.log_z1_coeff)


class LoopSolver:
    def __init__(self, genus_max: int, cutoff: int | None = None):
        if genus_max < 1:
            raise ValueError("genus bound must be >= 1")
        self.genus_max = genus_max
        self.cutoff = cutoff if cutoff is not None else 3 * genus_max + 2
        self.table = PTensorTable(self.cutoff)
        self._dtheta = [ThetaPoly.theta(self.cutoff)]
        self._lhs: dict[int, ThetaPoly] = {}
        self._dT: list[ThetaPoly] = []

    # -- coefficient assembly ---------------------------------------------

    def dtheta(self, i: int) -> ThetaPoly:
        while len(self._dtheta) <= i:
            self._dtheta.append(self._dtheta[-1].derive())
        return self._dtheta[i]

    def rhs_base(self) -> ThetaPoly:
        """T = Theta^2/16 - (1/16 - s1/24) Theta."""
        M = self.cutoff
        lin = JetPoly.from_sigma(SigmaPoly.s1() * Q(1, 24) + SigmaPoly.const(Q(-1, 16)), M)
        return ThetaPoly(M, [JetPoly.zero(M), lin, JetPoly.const(Q(1, 16), M)])

    def derived_base(self, m: int) -> ThetaPoly:
        if not self._dT:
            self._dT.append(self.rhs_base())
        while len(self._dT) <= m:
            self._dT.append(self._dT[-1].derive())
        return self._dT[m]

    def lhs_coefficient(self, i: int) -> ThetaPoly:
        got = self._lhs.get(i)
        if got is not None:
            return got
        acc = self.dtheta(i)
        for j in range(1, i + 1):
            acc = acc + self.table.p(j - 1, i - j + 1) * Q(comb(i, j))
        if acc.degree != i + 1:
            raise LoopEquationError(f"L_{i} has Theta degree {acc.degree}, expected {i + 1}")
        top = acc.coeff(i + 1)
        if len(top.terms) != 1:
            raise LoopEquationError(f"L_{i} top coefficient is not a single monomial")
        self._lhs[i] = acc
        return acc

    def rhs_genus(self, g: int, lower) -> ThetaPoly:
        if g < 1:
            raise ValueError("genus must be >= 1")
        if g == 1:
            return self.rhs_base()
        if len(lower) < g - 1:
            raise ValueError(f"rhs_genus({g}) needs H_1..H_{g - 1}")
        grads = [None] + [fe.gradient for fe in lower[: g - 1]]
        top_prev = 3 * (g - 1) - 2
        acc = ThetaPoly.zero(self.cutoff)
        for i in range(top_prev + 1):
            gi = grads[g - 1][i]
            if gi:
                acc = acc + self.derived_base(i + 2) * gi
        half = Q(1, 2)
        for i in range(top_prev + 1):
            for j in range(i, top_prev + 1):
                w = grads[g - 1][i].partial(j)
                for k in range(1, g):
                    a, b = grads[k], grads[g - k]
                    if i < len(a) and j < len(b):
                        w = w + a[i] * b[j]
                if not w:
                    continue
                scale = half if i == j else Q(1)
                acc = acc + self.table.p(i + 1, j + 1) * (w * scale)
        return acc

    # -- the solve -----------------------------------------------------------

    def solve_genus(self, g: int, lower) -> FreeEnergy:
        t0 = time.monotonic()
        n = 3 * g - 1
        ell = [self.lhs_coefficient(i) for i in range(n)]
        rhs = self.rhs_genus(g, lower)
        if rhs.coeff(0):
            raise LoopEquationError("RHS carries a Theta^0 component")
        rows = [[ell[i].coeff(a) for i in range(n)] for a in range(1, n + 1)]
        vec = [rhs.coeff(a) for a in range(1, n + 1)]
        gradient = TriangularSystem(n, rows, vec).solve()
        residual = self._apply_lhs(gradient) - rhs
        if residual:
            raise LoopEquationError(f"loop residual nonzero at genus {g}")
        fe = self.reconstruct(g, gradient)
        fe.provenance.update({
            "solver": SOLVER_VERSION,
            "ptable": self.table.fingerprint(),
            "wall_time": round(time.monotonic() - t0, 6),
        })
        self._check_homogeneity(fe)
        return fe

    def _apply_lhs(self, gradient) -> ThetaPoly:
        acc = ThetaPoly.zero(self.cutoff)
        for i, gi in enumerate(gradient):
            if gi:
                acc = acc + self.lhs_coefficient(i) * gi
        return acc

    def residual(self, g: int, energies) -> ThetaPoly:
        """LHS - RHS of the epsilon^(2g-2) slice with computed energies plugged in."""
        acc = self._apply_lhs(energies[g - 1].gradient)
        return acc - self.rhs_genus(g, energies)

    # -- reconstruction -------------------------------------------------------

    def reconstruct(self, g: int, gradient) -> FreeEnergy:
        """Rebuild H_g from its gradient: the genus-1 closed form, or the
        Euler identity for g >= 2; gradients must be closed."""
        M = self.cutoff
        for i in range(len(gradient)):
            for j in range(i + 1, len(gradient)):
                if gradient[i].partial(j) != gradient[j].partial(i):
                    raise LoopEquationError(f"gradient not closed at ({i}, {j})")
        if g == 1:
            expect0 = JetPoly.from_sigma(SigmaPoly.s1() * Q(1, 24), M)
            expect1 = JetPoly.z(1, M, -1) * Q(1, 24)
            if gradient[0] != expect0 or gradient[1] != expect1:
                raise LoopEquationError("genus-1 gradient does not match the closed form")
            body = JetPoly.monomial(Q(1, 24), (1, 0), {0: 1}, M)
            return FreeEnergy(1, list(gradient), body, log_z1_coeff=Q(1, 24))

        euler = JetPoly.zero(M)
        for j in range(1, len(gradient)):
            if gradient[j]:
                euler = euler + gradient[j].mul_z(j) * Q(j)
        body = euler / Q(2 * g - 2)
        anomaly = False
        if gradient[0]:
            # observed never to happen; integrate the z0 component and recheck
            anomaly = True
            body = body + (gradient[0] - body.partial(0)).integrate_z0()
            if _euler_weight(body) != body * Q(2 * g - 2):
                raise LoopEquationError("z0 fallback breaks the Euler identity")
        for i in range(len(gradient)):
            if body.partial(i) != gradient[i]:
                raise LoopEquationError(f"reconstructed body disagrees with gradient at z{i}")
        fe = FreeEnergy(g, list(gradient), body)
        if anomaly:
            fe.provenance["z0_anomaly"] = True
        return fe

    def _check_homogeneity(self, fe: FreeEnergy) -> None:
        if fe.genus < 2:
            return
        g, body = fe.genus, fe.body
        if not body.is_homogeneous(2 * g - 2, lambda k: k):
            raise LoopEquationError(f"H_{g} is not (2g-2)-homogeneous in jet weights")
        if not body.is_homogeneous(3 * g - 3, lambda k: k - 1, s1_weight=1, s3_weight=3):
            raise LoopEquationError(f"H_{g} is not (3g-3)-homogeneous in the dual grading")

    # -- driving --------------------------------------------------------------

    def compute(self, genus: int, cache_dir: str | None = None, progress=None):
        """H_1..H_genus, resuming from the cache when directory and hash match."""
        if genus > self.genus_max:
            raise ValueError("genus exceeds the solver's configured bound")
        energies: list[FreeEnergy] = []
        for g in range(1, genus + 1):
            fe = None
            if cache_dir:
                fe = load_cached(cache_dir, g, self.table.fingerprint(), self.cutoff)
            if fe is None:
                fe = self.solve_genus(g, energies)
                if cache_dir:
                    store_cached(cache_dir, fe)
            energies.append(fe)
            if progress:
                progress(fe)
        return energies


def _euler_weight(p: JetPoly) -> JetPoly:
    out = JetPoly.zero(p.cutoff)
    for j in range(1, p.cutoff + 1):
        d = p.partial(j)
        if d:
            out = out + d.mul_z(j) * Q(j)
    return out


# -- per-genus cache files ------------------------------------------------------


def _payload(fe: FreeEnergy) -> dict:
    from .textform import jet_json

    return {
        "genus": fe.genus,
        "gradient": [jet_json(c) for c in fe.gradient],
        "body": jet_json(fe.body),
        "log_z1_coeff": qjson(fe.log_z1_coeff) if fe.log_z1_coeff is not None else None,
    }


def _payload_hash(payload: dict, fingerprint: str) -> str:
    blob = json.dumps(payload, sort_keys=True) + "|" + fingerprint
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_path(cache_dir: str, genus: int) -> str:
    return os.path.join(cache_dir, f"free_energy_g{genus}.json")


def store_cached(cache_dir: str, fe: FreeEnergy) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    payload = _payload(fe)
    record = {
        "payload": payload,
        "provenance": {k: fe.provenance[k] for k in sorted(fe.provenance)},
        "sha256": _payload_hash(payload, fe.provenance.get("ptable", "")),
    }
    path = cache_path(cache_dir, fe.genus)
    with open(path, "w") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def load_cached(cache_dir: str, genus: int, fingerprint: str, cutoff: int) -> FreeEnergy | None:
    """Return the cached FreeEnergy, or None on any mismatch or corruption."""
    from .textform import jet_from_json

    path = cache_path(cache_dir, genus)
    try:
        with open(path) as fh:
            record = json.load(fh)
        payload = record["payload"]
        if record["provenance"].get("ptable") != fingerprint:
            return None
        if record["sha256"] != _payload_hash(payload, fingerprint):
            return None
        if payload["genus"] != genus:
            return None
        gradient = [jet_from_json(c, cutoff) for c in payload["gradient"]]
        body = jet_from_json(payload["body"], cutoff)
        log_c = parse_q(payload["log_z1_coeff"]) if payload["log_z1_coeff"] else None
        prov = dict(record["provenance"])
        prov["cache"] = "hit"
        return FreeEnergy(genus, gradient, body, log_c, prov)
    except (OSError, ValueError, KeyError, TypeError):
        return None
