"""
Shared fixtures
"""

import pytest

from critgroup.services.catalog import CatalogEntry, CatalogService
from critgroup.services.exact_linalg import IntMatrix
from critgroup.services.rep_data import ModuleClass, module_from_label


@pytest.fixture(scope="session")
def catalog() -> CatalogService:
    return CatalogService()


@pytest.fixture(scope="session")
def s4p2(catalog) -> CatalogEntry:
    return catalog.group_algebra("s4p2")


@pytest.fixture(scope="session")
def s4p3(catalog) -> CatalogEntry:
    return catalog.group_algebra("s4p3")


@pytest.fixture(scope="session")
def s4p0(catalog) -> CatalogEntry:
    return catalog.group_algebra("s4p0")


@pytest.fixture(scope="session")
def s5p3(catalog) -> CatalogEntry:
    return catalog.group_algebra("s5p3")


@pytest.fixture(scope="session")
def group_algebras(s4p2, s4p3, s4p0, s5p3):
    return [s4p2, s4p3, s4p0, s5p3]


def module(entry: CatalogEntry, label: str) -> ModuleClass:
    return module_from_label(entry.datum, label)


def matrix(rows) -> IntMatrix:
    return IntMatrix.from_rows(rows)


# Laplacian of V = P4 over F_3[S5]
S5_P4_LAPLACIAN = [
    [8, 0, -2, -2, -2],
    [0, 8, -2, -2, -2],
    [0, -2, 8, -4, -4],
    [-2, 0, -4, 8, -4],
    [0, 0, -2, -2, 6],
]

S4P0_D31_MCKAY = [
    [0, 1, 0, 0, 0],
    [1, 1, 1, 1, 0],
    [0, 1, 0, 1, 0],
    [0, 1, 1, 1, 1],
    [0, 0, 0, 1, 0],
]
