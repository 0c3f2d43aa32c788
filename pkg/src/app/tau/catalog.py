from __future__ import annotations

import logging
import threading
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.app.modules.decompose import decompose
from src.app.modules.homs import hom_dim, trace_dims
from src.app.modules.presentation import GVector, ar_translate, g_vector
from src.app.modules.representation import Representation, direct_sum
from src.app.quiver.algebra import BoundQuiverAlgebra


logger = logging.getLogger(__name__)


class ModuleCatalog:
    """Indecomposable tau-rigid modules keyed by g-vector, with memoised invariants.

    Every pairwise quantity the enumeration needs (Hom dimensions, tau,
    rigidity, Fac tests, cokernel pieces) is a function of g-vectors once the
    registry fixes one representative per g-vector.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, prime: int) -> None:
        self.algebra = algebra
        self.prime = prime
        self._lock = threading.Lock()
        self._modules: Dict[GVector, Representation] = {}
        self._hom: Dict[Tuple[GVector, GVector], int] = {}
        self._tau: Dict[GVector, Representation] = {}
        self._rigid: Dict[Tuple[GVector, GVector], bool] = {}
        self._fac: Dict[Tuple[GVector, FrozenSet[GVector]], bool] = {}
        self._pieces: Dict[Tuple[GVector, FrozenSet[GVector]], Tuple[Tuple[GVector, ...], Tuple[Representation, ...]]] = {}

    def __len__(self) -> int:
        return len(self._modules)

    def register(self, module: Representation, g: Optional[GVector] = None) -> GVector:
        """Record ``module`` under its g-vector; the first module registered for a g-vector wins."""
        g = g_vector(module) if g is None else g
        with self._lock:
            self._modules.setdefault(g, module)
        return g

    def module(self, g: GVector) -> Representation:
        return self._modules[g]

    def g_vectors(self) -> List[GVector]:
        with self._lock:
            return sorted(self._modules)

    def _store(self, table: dict, key, value):
        """Memoise ``value`` under ``key``; concurrent callers keep the first stored value."""
        with self._lock:
            return table.setdefault(key, value)

    def hom(self, a: GVector, b: GVector) -> int:
        key = (a, b)
        if key not in self._hom:
            return self._store(self._hom, key, hom_dim(self._modules[a], self._modules[b]))
        return self._hom[key]

    def tau(self, g: GVector) -> Representation:
        if g not in self._tau:
            return self._store(self._tau, g, ar_translate(self._modules[g]))
        return self._tau[g]

    def rigid(self, a: GVector, b: GVector) -> bool:
        """``Hom(A, tau B) = 0`` and ``Hom(B, tau A) = 0``."""
        key = (a, b) if a <= b else (b, a)
        if key not in self._rigid:
            ma, mb = self._modules[a], self._modules[b]
            rigid = hom_dim(ma, self.tau(b)) == 0 and hom_dim(mb, self.tau(a)) == 0
            return self._store(self._rigid, key, rigid)
        return self._rigid[key]

    def in_fac(self, x: GVector, others: Iterable[GVector]) -> bool:
        """Whether ``X`` lies in ``Fac`` of the direct sum of ``others``.

        Only summands with a nonzero map into ``X`` can contribute to its trace.
        """
        mapping = frozenset(g for g in others if self.hom(g, x))
        key = (x, mapping)
        if key not in self._fac:
            target = self._modules[x]
            if not mapping:
                return self._store(self._fac, key, target.is_zero)
            source = direct_sum([self._modules[g] for g in sorted(mapping)])
            return self._store(self._fac, key, trace_dims(target, source) == target.dims)
        return self._fac[key]

    def cokernel_pieces(
        self,
        x: GVector,
        others: Iterable[GVector],
        build,
    ) -> Tuple[Tuple[GVector, ...], Tuple[Representation, ...]]:
        """g-vectors and modules of the indecomposable summands of the universal cokernel.

        ``build(x_module, target_modules)`` returns the cokernel; only summands
        receiving a nonzero map from ``X`` enter it.
        """
        receiving = frozenset(g for g in others if self.hom(x, g))
        key = (x, receiving)
        if key not in self._pieces:
            coker = build(self._modules[x], [self._modules[g] for g in sorted(receiving)])
            gs: List[GVector] = []
            mods: List[Representation] = []
            for piece, _ in decompose(coker):
                gs.append(g_vector(piece))
                mods.append(piece)
            logger.debug("cokernel of %s against %d summands: %s", x, len(receiving), gs)
            return self._store(self._pieces, key, (tuple(gs), tuple(mods)))
        return self._pieces[key]
