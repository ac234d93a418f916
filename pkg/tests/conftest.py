import pytest

from spectralpq.corpus import BENCH_NAMES, HIGH_MOTION_NAME, make_corpus
from spectralpq.pipeline import EncoderConfig, encode_sequence


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERION_RESULTS
    except ImportError:
        return
    if CRITERION_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in CRITERION_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return {seq.name: seq for seq in make_corpus(seed=0)}


@pytest.fixture(scope="session")
def bench_sequences(corpus):
    return [corpus[name] for name in BENCH_NAMES]


@pytest.fixture(scope="session")
def high_motion_sequence(corpus):
    return corpus[HIGH_MOTION_NAME]


@pytest.fixture(scope="session")
def encode_cache(corpus):
    """Session-wide memoized encoder so acceptance criteria share encodes."""
    cache = {}

    def get(name, qp, mode, rdoq=True):
        key = (name, qp, mode, rdoq)
        if key not in cache:
            config = EncoderConfig(base_qp=qp, mode=mode, rdoq=rdoq)
            cache[key] = encode_sequence(corpus[name].frames, config)
        return cache[key]

    return get
