# tests/conftest.py
import logging

import pytest
from rich.console import Console
from rich.logging import RichHandler  # ← colored log handler

from apps.ampcg.core.config import get_settings
from apps.ampcg.core.logging_config import configure_structlog
from apps.ampcg.models.graph import ChainGraph
from apps.ampcg.services.analysis_service import (
    deflagged_fixture_graphs,
    enumerate_cgs,
    meek_fixture_graphs,
    triplex_classes,
)
from apps.ampcg.services.separation_service import independence_model

# ----------------- rich logger setup -----------------
logging.basicConfig(
    level="INFO",
    format="%(message)s",
    handlers=[RichHandler(rich_tracebacks=True, console=Console(stderr=True))],  # stdout stays clean for CLI output
)
logger = logging.getLogger(__name__)
configure_structlog()
# -----------------------------------------------------

settings = get_settings()

FOUR = ("A", "B", "C", "D")


@pytest.fixture
def deflagged_pair() -> tuple[ChainGraph, ChainGraph]:
    return deflagged_fixture_graphs()


@pytest.fixture
def meek_pair() -> tuple[ChainGraph, ChainGraph]:
    return meek_fixture_graphs()


@pytest.fixture(scope="session")
def cgs_on_four() -> list[ChainGraph]:
    graphs = list(enumerate_cgs(FOUR))
    logger.info("enumerated %d chain graphs on 4 nodes", len(graphs))
    return graphs


@pytest.fixture(scope="session")
def classes_on_four() -> dict:
    return triplex_classes(FOUR)


@pytest.fixture(scope="session")
def models_on_four(cgs_on_four) -> dict:
    """Independence model of every 4-node CG, keyed by the CG"""
    return {g: independence_model(g) for g in cgs_on_four}
