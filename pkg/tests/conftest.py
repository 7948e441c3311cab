import numpy as np
import pytest

from memristor_melody import bundled_corpus, seed_graphs


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


@pytest.fixture
def seeded(corpus):
    return seed_graphs(corpus)


def random_melody_text(rng, length, low=48, high=96):
    """Random token text over a wide pitch range, with occasional rests."""
    from memristor_melody.seeder import pitch_name

    durations = ["0.25", "0.5", "1", "2", "0.375", "0.75", "1.5", "3", "8", "3/8", "0.3"]
    tokens = []
    for _ in range(length):
        d = durations[rng.integers(len(durations))]
        if rng.random() < 0.05:
            tokens.append(f"R:{d}")
        else:
            tokens.append(f"{pitch_name(int(rng.integers(low, high)))}:{d}")
    return " ".join(tokens)


@pytest.fixture
def np_rng():
    return np.random.default_rng(20261016)


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; marked FAIL unless the test body completes."""
    entry = {"name": request.node.name, "detail": "", "ok": False}
    _ACCEPTANCE.append(entry)

    def done(detail):
        entry["detail"] = detail
        entry["ok"] = True

    yield done


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if e['ok'] else 'FAIL'}  {e['name']}  {e['detail']}")
