"""Group presentations and free-group words.

Text format, one presentation per file:

    gens: a b t
    rels: a t b, b- t a-

Words are whitespace-separated generator tokens, a trailing ``-`` marking an
inverse.  Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass

from .halfedge import Letter


def _inv(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


def parse_word(text: str) -> tuple[Letter, ...]:
    letters = []
    for tok in text.split():
        if tok.endswith("-"):
            name, sign = tok[:-1], -1
        else:
            name, sign = tok, 1
        if not name or not name.isidentifier():
            raise ValueError(f"bad generator token {tok!r}")
        letters.append((name, sign))
    return tuple(letters)


def format_word(letters: tuple[Letter, ...] | "Word") -> str:
    if isinstance(letters, Word):
        letters = letters.letters
    return " ".join(g if s > 0 else g + "-" for g, s in letters)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]

    @staticmethod
    def parse(text: str) -> "Word":
        return Word(parse_word(text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(_inv(x) for x in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        return Word(free_reduce(self.letters))

    def cyclic_reduce(self) -> "Word":
        return Word(cyclic_reduce(self.letters))

    def is_trivial(self) -> bool:
        return not free_reduce(self.letters)

    def rotations(self) -> list[tuple[Letter, ...]]:
        w = self.letters
        return [w[k:] + w[:k] for k in range(max(len(w), 1))]

    def generators(self) -> frozenset[str]:
        return frozenset(g for g, _ in self.letters)


def free_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for x in letters:
        if out and out[-1] == _inv(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    w = list(free_reduce(letters))
    while len(w) >= 2 and w[0] == _inv(w[-1]):
        w = w[1:-1]
    return tuple(w)


def is_cyclically_reduced(letters: tuple[Letter, ...]) -> bool:
    return cyclic_reduce(letters) == tuple(letters)


def _is_free_bigon(letters: tuple[Letter, ...]) -> bool:
    return len(letters) == 2 and letters[1] == _inv(letters[0])


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    completed: bool = False  # free bigon relators appended

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        gens = set(self.generators)
        for r in self.relators:
            if not r.generators() <= gens:
                raise ValueError(f"relator {r} uses unknown generators")
            if len(r) == 0:
                raise ValueError("empty relator")
            if not (is_cyclically_reduced(r.letters) or _is_free_bigon(r.letters)):
                raise ValueError(f"relator {r} is not cyclically reduced")

    # ---- constants -------------------------------------------------------

    @property
    def min_relator_length(self) -> int:
        if not self.relators:
            raise ValueError("presentation has no relators")
        return min(len(r) for r in self.relators)

    @property
    def max_relator_length(self) -> int:
        if not self.relators:
            raise ValueError("presentation has no relators")
        return max(len(r) for r in self.relators)

    @property
    def is_free(self) -> bool:
        return not self.relators

    # ---- operations --------------------------------------------------------

    def relator_letters(self) -> list[tuple[Letter, ...]]:
        return [r.letters for r in self.relators]

    def free_completion(self) -> "Presentation":
        """Append the s s^-1 bigon relator for every generator."""
        if self.completed:
            return self
        bigons = tuple(Word(((g, 1), (g, -1))) for g in self.generators)
        return Presentation(self.generators, self.relators + bigons, completed=True)

    def format(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        if self.relators:
            lines.append("rels: " + ", ".join(str(r) for r in self.relators))
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "Presentation":
        gens: tuple[str, ...] | None = None
        rels: tuple[Word, ...] = ()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("gens:"):
                if gens is not None:
                    raise ValueError(f"line {lineno}: duplicate gens line")
                gens = tuple(line[len("gens:") :].split())
            elif line.startswith("rels:"):
                if gens is None:
                    raise ValueError(f"line {lineno}: rels before gens")
                parts = [p.strip() for p in line[len("rels:") :].split(",")]
                rels = tuple(Word.parse(p) for p in parts if p)
            else:
                raise ValueError(f"line {lineno}: expected gens: or rels:")
        if gens is None:
            raise ValueError("missing gens line")
        return Presentation(gens, rels)


# ---- stock presentations -----------------------------------------------


def z2_presentation() -> Presentation:
    return Presentation(("a", "b"), (Word.parse("a b a- b-"),))


def fan_presentation() -> Presentation:
    return Presentation(("a", "b", "t"), (Word.parse("a t b"), Word.parse("b- t a-")))


def heisenberg_presentation() -> Presentation:
    return Presentation(
        ("x", "y", "z"),
        (
            Word.parse("x y x- y- z-"),
            Word.parse("x z x- z-"),
            Word.parse("y z y- z-"),
        ),
    )


def free_presentation(rank: int = 2) -> Presentation:
    if rank < 1:
        raise ValueError("rank must be positive")
    names = tuple(f"a{i}" for i in range(1, rank + 1)) if rank > 2 else ("a", "b")[:rank]
    return Presentation(names, ())


def surface_presentation(genus: int = 2) -> Presentation:
    if genus < 1:
        raise ValueError("genus must be positive")
    gens = []
    letters: list[Letter] = []
    for i in range(1, genus + 1):
        a, b = f"a{i}", f"b{i}"
        gens.extend([a, b])
        letters.extend([(a, 1), (b, 1), (a, -1), (b, -1)])
    return Presentation(tuple(gens), (Word(tuple(letters)),))


def fixture_presentation() -> Presentation:
    """Presentation carried by the collapse/unfold test fixture."""
    return Presentation(
        ("a", "b", "c", "d", "f", "g", "h", "i", "j", "k", "u", "v"),
        (
            Word.parse("a b v- c"),
            Word.parse("b- k d-"),
            Word.parse("a- j- g- f- k-"),
            Word.parse("u- i- h- j c-"),
        ),
    )
