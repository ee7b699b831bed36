from __future__ import annotations

import pytest

from fmchow.chowring import RingPresentation, build_presentation

_PRESENTATIONS: dict[tuple[int, int], RingPresentation] = {}


@pytest.fixture(scope="session")
def presentation():
    """Shared, lazily built presentations: graded pieces are cached per (d, n)."""

    def get(d: int, n: int) -> RingPresentation:
        if (d, n) not in _PRESENTATIONS:
            _PRESENTATIONS[(d, n)] = build_presentation(d, n)
        return _PRESENTATIONS[(d, n)]

    return get


@pytest.fixture(autouse=True)
def _no_cap_env(monkeypatch):
    monkeypatch.delenv("TDN_MAX_CELLS", raising=False)
