import time

import pytest

import ringgraph as rg


@pytest.fixture(scope="session")
def catalog64():
    t0 = time.perf_counter()
    catalog = rg.build_catalog(64)
    print(f"\n[catalog max_order=64: {len(catalog.entries)} entries, "
          f"built in {time.perf_counter() - t0:.2f}s]")
    return catalog


@pytest.fixture(scope="session")
def entries32(catalog64):
    return tuple(e for e in catalog64.entries if e.ring.order <= 32)
