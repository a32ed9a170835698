"""Seeded electorate generators: uniform and urn-model profiles.

Both generators run on SplitMix64, a 64-bit mixing generator with a
platform-independent stream, so a (model, m, voters, seed) tuple pins
the electorate byte for byte on every machine and Python version.
Nothing here touches the global random state.

The urn model is the Polya-Eggenberger scheme with contagion parameter
b = m!: the urn starts with one copy of every ranking, and each drawn
ranking goes back along with b extra copies of itself.  Because b
equals the number of rankings, the draw simplifies: vote k+1 is a fresh
uniform ranking with probability 1/(k+1), otherwise an exact copy of
one of the first k votes chosen uniformly.  In particular the second
vote copies the first with probability exactly 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ValidationError, Vote

_MASK64 = (1 << 64) - 1

MODELS = ("uniform", "urn")


class SplitMix64:
    """SplitMix64 stream: state advances by a fixed odd constant, and
    each output is a bijective mix of the state.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias removed by rejection."""
        if bound <= 0:
            raise ValidationError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, swapping from the high end down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(master: int, *parts: int) -> int:
    """Per-trial seed: fold context integers into the master seed.

    Each part is absorbed by reseeding SplitMix64 with the running
    value XOR the part and drawing once.  Stable across platforms.
    """
    value = SplitMix64(master).next_u64()
    for part in parts:
        value = SplitMix64(value ^ (part & _MASK64)).next_u64()
    return value


@dataclass(frozen=True)
class GenSpec:
    """Everything that determines a generated electorate."""

    model: str
    m: int
    voters: int
    seed: int

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValidationError(
                f"model must be one of {', '.join(MODELS)}, got {self.model!r}"
            )
        if self.m < 1:
            raise ValidationError(f"candidate count must be >= 1, got {self.m}")
        if self.voters < 0:
            raise ValidationError(f"voter count must be >= 0, got {self.voters}")


def _fresh_vote(rng: SplitMix64, m: int) -> Vote:
    ranking = list(range(1, m + 1))
    rng.shuffle(ranking)
    return Vote(tuple(ranking))


def gen_uniform(spec: GenSpec) -> tuple[Vote, ...]:
    """Independent uniform rankings, one Fisher-Yates pass per vote."""
    rng = SplitMix64(spec.seed)
    return tuple(_fresh_vote(rng, spec.m) for _ in range(spec.voters))


@dataclass(frozen=True)
class UrnDraw:
    """One urn step: the vote plus where it came from (None = fresh)."""

    vote: Vote
    copied_from: int | None


def gen_urn_trace(spec: GenSpec) -> tuple[UrnDraw, ...]:
    """Urn-model electorate with per-vote provenance.

    Vote 1 is always fresh.  For vote k+1 a single draw u in [0, k]
    decides everything: u = k means a fresh uniform ranking, any other
    u means an exact copy of vote u+1.
    """
    rng = SplitMix64(spec.seed)
    draws: list[UrnDraw] = []
    for k in range(spec.voters):
        if k == 0:
            draws.append(UrnDraw(_fresh_vote(rng, spec.m), None))
            continue
        u = rng.below(k + 1)
        if u == k:
            draws.append(UrnDraw(_fresh_vote(rng, spec.m), None))
        else:
            draws.append(UrnDraw(draws[u].vote, u))
    return tuple(draws)


def gen_urn(spec: GenSpec) -> tuple[Vote, ...]:
    """Urn-model electorate (see gen_urn_trace for the draw scheme)."""
    return tuple(d.vote for d in gen_urn_trace(spec))


def gen_votes(spec: GenSpec) -> tuple[Vote, ...]:
    """Dispatch on the model name."""
    if spec.model == "uniform":
        return gen_uniform(spec)
    return gen_urn(spec)
