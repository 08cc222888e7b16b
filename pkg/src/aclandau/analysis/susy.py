"""Truncated Fock-space representation of the supersymmetric structure.

Basis |n_B, n_F> with n_B = 0..N_B and n_F in {0, 1}, flattened as
2*n_B + n_F. The boson ladder is cut at N_B, so [a, a^+] = 1 fails on the
top boson level only; identities are checked on the rows below it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class FockAlgebra:
    n_boson: int
    a: np.ndarray
    f: np.ndarray
    tau: np.ndarray
    N_B: np.ndarray
    N_F: np.ndarray
    Q: np.ndarray
    H: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * (self.n_boson + 1)

    @property
    def ad(self) -> np.ndarray:
        return self.a.conj().T

    @property
    def fd(self) -> np.ndarray:
        return self.f.conj().T

    @property
    def Qd(self) -> np.ndarray:
        return self.Q.conj().T

    def index(self, nb: int, nf: int) -> int:
        return 2 * nb + nf

    def basis(self, nb: int, nf: int) -> np.ndarray:
        v = np.zeros(self.dim)
        v[self.index(nb, nf)] = 1.0
        return v

    @property
    def interior(self) -> np.ndarray:
        """Flat indices with n_B < N_B (off the truncation edge)."""
        return np.arange(2 * self.n_boson)


def build_fock_algebra(n_boson: int) -> FockAlgebra:
    if n_boson < 2:
        raise ValueError("need at least N_B = 2 boson levels")
    b = np.diag(np.sqrt(np.arange(1, n_boson + 1, dtype=float)), 1)
    f2 = np.array([[0.0, 1.0], [0.0, 0.0]])  # f|1> = |0>
    eye_b = np.eye(n_boson + 1)
    eye_f = np.eye(2)
    a = np.kron(b, eye_f)
    f = np.kron(eye_b, f2)
    fd = f.T
    tau = f @ fd - fd @ f
    N_B = a.T @ a
    N_F = 0.5 * (np.eye(2 * (n_boson + 1)) - tau)
    Q = a @ fd
    H = Q @ Q.T + Q.T @ Q
    return FockAlgebra(n_boson=n_boson, a=a, f=f, tau=tau, N_B=N_B, N_F=N_F, Q=Q, H=H)


def _maxabs(M) -> float:
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


@dataclass(frozen=True)
class SusyReport:
    residuals: dict
    spectrum: np.ndarray
    pairs: list
    paired: bool

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def to_dict(self) -> dict:
        return {"residuals": dict(self.residuals), "max_residual": self.max_residual,
                "spectrum": [float(v) for v in self.spectrum],
                "pairs": [[float(x) for x in p] for p in self.pairs], "paired": self.paired}


def susy_check(alg: FockAlgebra) -> SusyReport:
    I = np.eye(alg.dim)
    inner = alg.interior
    a, ad, f, fd, Q, Qd = alg.a, alg.ad, alg.f, alg.fd, alg.Q, alg.Qd
    comm_ff = f @ fd - fd @ f
    res = {
        "ff": _maxabs(f @ f),
        "fdfd": _maxabs(fd @ fd),
        "anticommutator_f": _maxabs(f @ fd + fd @ f - I),
        "commutator_f_tau": _maxabs(comm_ff - alg.tau),
        "commutator_a": _maxabs((a @ ad - ad @ a - I)[np.ix_(inner, inner)]),
        "hamiltonian_identity": _maxabs((Q @ Qd + Qd @ Q - ad @ a - 0.5 * (I - comm_ff))[inner]),
        "number_fermion": _maxabs(alg.N_F - 0.5 * (I - alg.tau)),
        "Q_squared": _maxabs(Q @ Q),
        "Q_vacuum": _maxabs(Q @ alg.basis(0, 0)),
        "Qd_vacuum": _maxabs(Qd @ alg.basis(0, 0)),
    }
    # Q |n+1, 0> = sqrt(n+1) |n, 1>
    partner = 0.0
    for n in range(alg.n_boson):
        diff = Q @ alg.basis(n + 1, 0) - np.sqrt(n + 1) * alg.basis(n, 1)
        partner = max(partner, _maxabs(diff))
    res["Q_partner_map"] = partner
    # Fock actions on every basis state below the edge
    act = 0.0
    for nb in range(alg.n_boson):
        for nf in (0, 1):
            v = alg.basis(nb, nf)
            want_a = np.sqrt(nb) * alg.basis(nb - 1, nf) if nb > 0 else np.zeros(alg.dim)
            want_ad = np.sqrt(nb + 1) * alg.basis(nb + 1, nf)
            want_f = alg.basis(nb, nf - 1) if nf == 1 else np.zeros(alg.dim)
            want_fd = alg.basis(nb, nf + 1) if nf == 0 else np.zeros(alg.dim)
            act = max(act, _maxabs(a @ v - want_a), _maxabs(ad @ v - want_ad),
                      _maxabs(f @ v - want_f), _maxabs(fd @ v - want_fd))
    res["fock_actions"] = act

    Hin = alg.H[np.ix_(inner, inner)]
    evals = np.linalg.eigvalsh(Hin)
    evals = np.where(np.abs(evals - np.round(evals)) < 1e-12, np.round(evals), evals)
    # pair nonzero levels across fermion sectors: |n,0> with |n-1,1>
    pairs = []
    paired = True
    diag = np.diag(Hin)
    for n in range(1, alg.n_boson):
        e0 = diag[alg.index(n, 0)]
        e1 = diag[alg.index(n - 1, 1)]
        pairs.append((e0, e1))
        paired &= bool(e0 == e1)
    zero_modes = int(np.sum(evals == 0))
    paired &= zero_modes == 1
    vals, counts = np.unique(evals, return_counts=True)
    top = alg.n_boson  # level N_B has its |N_B, 0> partner cut off
    paired &= all(c == 2 for v, c in zip(vals, counts) if 0 < v < top)
    res["offdiagonal_H"] = _maxabs(Hin - np.diag(diag))
    return SusyReport(residuals=res, spectrum=np.sort(evals), pairs=pairs, paired=paired)
