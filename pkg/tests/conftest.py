from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cqglab.corep import irrep_table
from cqglab.groups import builtin_algebras
from cqglab.haar import gram_matrices, solve_haar


@pytest.fixture(scope="session")
def algebras():
    return builtin_algebras()


class Context:
    """Bundle of derived objects for one algebra, built once per session."""

    def __init__(self, alg):
        self.algebra = alg
        self.haar = solve_haar(alg)
        self.grams = gram_matrices(alg, self.haar)
        self.table = irrep_table(alg, self.haar, self.grams.gram_right)
        self._cg = {}

    def cg(self, p_label: str, q_label: str):
        from cqglab.cg import solve_cg
        key = (p_label, q_label)
        if key not in self._cg:
            self._cg[key] = solve_cg(self.table[p_label], self.table[q_label],
                                     self.table, self.haar)
        return self._cg[key]


@pytest.fixture(scope="session")
def contexts(algebras):
    return {label: Context(alg) for label, alg in algebras.items()}


@pytest.fixture(scope="session")
def cs3_fun(contexts):
    return contexts["C(S3)"]


@pytest.fixture(scope="session")
def cs3_grp(contexts):
    return contexts["C[S3]"]
