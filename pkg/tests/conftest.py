import contextlib
import json
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gtorsion.presentations import STD, TWO_GEN
from gtorsion.words import Alphabet

settings.register_profile(
    "default",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def words(alphabet: Alphabet, max_syllables: int = 6, max_exp: int = 3):
    """Random words (not necessarily given in reduced form)."""
    syllable = st.tuples(
        st.sampled_from(alphabet.names),
        st.integers(-max_exp, max_exp).filter(bool),
    )
    return st.lists(syllable, max_size=max_syllables).map(alphabet.word_from_syllables)


def reduce_letters(letters):
    """Stack-based free reduction of a list of (name, +-1) letters."""
    out = []
    for g, s in letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return out


def letters_of(w):
    names = w.alphabet.names
    return [(names[g], s) for g, s in w.letters()]


two_gen_words = words(TWO_GEN)
std_words = words(STD)
nonzero = st.integers(-6, 6).filter(bool)
positive = st.integers(1, 6)


@pytest.fixture(scope="session")
def table_rows():
    text = resources.files("gtorsion.data").joinpath("witness_table.json").read_text()
    return json.loads(text)


@pytest.fixture(scope="session")
def filled_rows(table_rows):
    return [r for r in table_rows if "n" in r]


# -- acceptance report -------------------------------------------------------------

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """``with criterion(n, title) as note:`` records one PASS/FAIL line for the run summary."""
    results = request.config.stash.setdefault(ACCEPTANCE, {})

    @contextlib.contextmanager
    def record(number, title):
        details = []
        try:
            yield details.append
        except BaseException as exc:
            reason = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
            results[number] = f"AC{number} FAIL  {title}: {reason[:120]}"
            print(results[number])
            raise
        results[number] = f"AC{number} PASS  {title}" + (f" ({'; '.join(details)})" if details else "")
        print(results[number])

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
