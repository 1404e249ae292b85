"""Synthetic scheduling-dialogue corpus with four-level annotations.

Turns are generated from a small phrase-template grammar over a meeting
vocabulary, then roughened with spontaneous-speech phenomena: pauses,
interjections, word repetitions, word substitutions and phrase restarts.
Every token carries gold categories on all four levels, a phrase-boundary
mark, and a deletion mark naming the disfluency it belongs to.

A handful of hand-annotated German turns is prepended to every generated
corpus; they anchor the regression fixtures and exercise vocabulary outside
the template grammar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .lexicon import Lexicon, LexiconEntry, normalize_word
from .tagsets import TagsetBundle

PAUSE_WORD = "<pause>"
REPAIR_KINDS = ("pause", "interjection", "word-repair", "phrase-repair")


@dataclass
class GoldToken:
    word: str
    syn: str  # basic syntactic abbreviation
    syn_abs: str  # abstract syntactic abbreviation
    sem: str  # basic semantic abbreviation
    sem_abs: str  # abstract semantic abbreviation
    boundary: int  # 1 if the token opens a phrase
    deleted: bool = False
    repair: str | None = None


@dataclass
class Turn:
    turn_id: int
    tokens: list

    def words(self):
        return [t.word for t in self.tokens]


@dataclass
class Corpus:
    turns: list

    @property
    def n_tokens(self) -> int:
        return sum(len(t.tokens) for t in self.turns)

    def __len__(self) -> int:
        return len(self.turns)

    # ---- file format ---------------------------------------------------
    # '== turn <id>' headers; one token per line:
    # word syn abs_syn sem abs_sem boundary deleted repair

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# word syn abs_syn sem abs_sem boundary deleted repair\n")
            for turn in self.turns:
                fh.write(f"== turn {turn.turn_id}\n")
                for t in turn.tokens:
                    repair = t.repair if t.repair else "-"
                    fh.write(
                        f"{t.word} {t.syn} {t.syn_abs} {t.sem} {t.sem_abs} "
                        f"{t.boundary} {int(t.deleted)} {repair}\n"
                    )

    @classmethod
    def load(cls, path) -> "Corpus":
        turns = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if line.startswith("== turn"):
                    turns.append(Turn(int(line.split()[2]), []))
                    continue
                parts = line.split()
                if len(parts) != 8 or not turns:
                    raise ValueError(f"{path}:{lineno}: bad corpus line")
                word, syn, syn_abs, sem, sem_abs, boundary, deleted, repair = parts
                if repair != "-" and repair not in REPAIR_KINDS:
                    raise ValueError(f"{path}:{lineno}: unknown repair kind {repair!r}")
                turns[-1].tokens.append(
                    GoldToken(
                        word,
                        syn,
                        syn_abs,
                        sem,
                        sem_abs,
                        int(boundary),
                        bool(int(deleted)),
                        None if repair == "-" else repair,
                    )
                )
        return cls(turns)


def gold_phrases(turn: Turn):
    """(start, end, syn_abs, sem_abs) spans over the non-deleted tokens."""
    spans = []
    for i, tok in enumerate(turn.tokens):
        if tok.deleted:
            continue
        if not spans or tok.boundary:
            spans.append([i, i])
        else:
            spans[-1][1] = i
    return [
        (start, end, turn.tokens[start].syn_abs, turn.tokens[end].sem_abs)
        for start, end in spans
    ]


def split_corpus(corpus: Corpus, train_fraction: float):
    """First ceil(fraction * turns) turns train, the remainder test."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train fraction must lie in (0, 1)")
    cut = math.ceil(train_fraction * len(corpus.turns))
    return Corpus(corpus.turns[:cut]), Corpus(corpus.turns[cut:])


def build_lexicon(corpus: Corpus, tagsets: TagsetBundle, weighted: bool = False) -> Lexicon:
    """Lexicon whose possibility vectors are the union of observed gold tags."""
    senses: dict[str, tuple[set, set]] = {}
    for turn in corpus.turns:
        for tok in turn.tokens:
            syn_set, sem_set = senses.setdefault(normalize_word(tok.word), (set(), set()))
            syn_set.add(tok.syn)
            sem_set.add(tok.sem)
    entries = []
    for word in sorted(senses):
        syn_set, sem_set = senses[word]
        entries.append(
            LexiconEntry(
                word,
                tagsets.syn_basic.multi_hot(sorted(syn_set)),
                tagsets.sem_basic.multi_hot(sorted(sem_set)),
                is_pause="/" in syn_set,
                is_interjection="I" in syn_set,
            )
        )
    return Lexicon(entries, tagsets.syn_basic, tagsets.sem_basic, weighted=weighted)


# ---- template grammar --------------------------------------------------
# Each vocabulary item is (word, basic syn, basic sem); a phrase builder
# assigns the shared abstract labels and the boundary marks.

_PRONOUNS = [("i", "U", "ANIM"), ("we", "U", "ANIM"), ("you", "U", "ANIM"), ("they", "U", "ANIM")]
_AUXES = [
    ("would", "V", "AUX"),
    ("could", "V", "AUX"),
    ("should", "V", "AUX"),
    ("can", "V", "AUX"),
    ("may", "V", "AUX"),
]
_VERBS = [
    ("suggest", "V", "SUG"),
    ("propose", "V", "SUG"),
    ("prefer", "V", "SEL"),
    ("choose", "V", "SEL"),
    ("take", "V", "SEL"),
    ("meet", "V", "MEET"),
    ("say", "V", "UTTER"),
    ("mean", "V", "UTTER"),
    ("need", "V", "HAVE"),
    ("have", "V", "HAVE"),
]
_MOVE_VERBS = [("march", "V", "MOVE"), ("go", "V", "MOVE"), ("come", "V", "MOVE")]
_DETS = [("the", "D", "NIL"), ("a", "D", "NIL"), ("this", "D", "NIL"), ("that", "D", "NIL")]
_ADJS = [
    ("early", "J", "TIME"),
    ("late", "J", "TIME"),
    ("next", "J", "TIME"),
    ("new", "J", "ABS"),
    ("other", "J", "ABS"),
]
_OBJ_NOUNS = [
    ("meeting", "N", "MEET"),
    ("appointment", "N", "MEET"),
    ("date", "N", "TIME"),
    ("plan", "N", "ABS"),
    ("idea", "N", "ABS"),
    ("proposal", "N", "ABS"),
]
_PLACE_NOUNS = [
    ("office", "N", "PHYS"),
    ("room", "N", "PHYS"),
    ("hotel", "N", "PHYS"),
    ("station", "N", "PHYS"),
]
_DAYS = [
    ("monday", "N", "TIME"),
    ("tuesday", "N", "TIME"),
    ("wednesday", "N", "TIME"),
    ("thursday", "N", "TIME"),
    ("friday", "N", "TIME"),
]
_MONTHS = [
    ("january", "N", "TIME"),
    ("march", "N", "TIME"),
    ("april", "N", "TIME"),
    ("may", "N", "TIME"),
    ("june", "N", "TIME"),
]
_NUMERALS = [
    ("two", "M", "TIME"),
    ("four", "M", "TIME"),
    ("nine", "M", "TIME"),
    ("ten", "M", "TIME"),
    ("eleven", "M", "TIME"),
]
_CONF_WORDS = [("yes", "A", "YES"), ("right", "A", "YES"), ("exactly", "A", "YES"), ("okay", "A", "YES")]
_NEG_WORDS = [("no", "A", "NO"), ("not", "A", "NO")]
_SG_WORDS = [("well", "A", "NIL"), ("then", "A", "NIL"), ("actually", "A", "NIL"), ("anyway", "A", "NIL")]
_AG_WORDS = [
    ("unfortunately", "A", "NO"),
    ("gladly", "A", "YES"),
    ("maybe", "A", "NIL"),
    ("probably", "A", "NIL"),
]
_CONJS = [("and", "C", "NIL"), ("but", "C", "NIL")]
_INTERJECTIONS = [("uh", "I", "NIL"), ("uhm", "I", "NIL"), ("ähm", "I", "NIL")]
_OBJ_PRONOUNS = [("it", "U", "ABS")]


def _tok(item, syn_abs, sem_abs, boundary):
    word, syn, sem = item
    return GoldToken(word, syn, syn_abs, sem, sem_abs, boundary)


def _pick(rng, items):
    return items[int(rng.integers(len(items)))]


class _Grammar:
    """Phrase builders; each returns a token list with boundaries set."""

    def __init__(self, rng):
        self.rng = rng

    def agent(self):
        return [_tok(_pick(self.rng, _PRONOUNS), "NG", "AGENT", 1)]

    def verb_group(self, verbs=_VERBS):
        tokens = []
        if self.rng.random() < 0.3:
            tokens.append(_tok(_pick(self.rng, _AUXES), "VG", "ACT", 1))
        tokens.append(_tok(_pick(self.rng, verbs), "VG", "ACT", 0 if tokens else 1))
        return tokens

    def object_group(self):
        roll = self.rng.random()
        if roll < 0.1:
            return [_tok(_pick(self.rng, _OBJ_PRONOUNS), "NG", "OBJ", 1)]
        if roll < 0.2:
            return [_tok(_pick(self.rng, _MONTHS), "NG", "OBJ", 1)]
        tokens = [_tok(_pick(self.rng, _DETS), "NG", "OBJ", 1)]
        if self.rng.random() < 0.4:
            tokens.append(_tok(_pick(self.rng, _ADJS), "NG", "OBJ", 0))
        tokens.append(_tok(_pick(self.rng, _OBJ_NOUNS), "NG", "OBJ", 0))
        return tokens

    def time_at(self):
        roll = self.rng.random()
        if roll < 0.15:
            head, tail = ("in", "R", "HERE"), _pick(self.rng, _MONTHS)
        elif roll < 0.3:
            head, tail = ("at", "R", "HERE"), _pick(self.rng, _NUMERALS)
        else:
            head, tail = ("on", "R", "TIME"), _pick(self.rng, _DAYS)
        return [_tok(head, "PG", "TM-AT", 1), _tok(tail, "PG", "TM-AT", 0)]

    def time_from(self):
        return [
            _tok(("from", "R", "SRC"), "PG", "TM-FRM", 1),
            _tok(_pick(self.rng, _NUMERALS), "PG", "TM-FRM", 0),
        ]

    def time_to(self):
        return [
            _tok(("until", "R", "DEST"), "PG", "TM-TO", 1),
            _tok(_pick(self.rng, _NUMERALS), "PG", "TM-TO", 0),
        ]

    def loc_at(self):
        head = ("in", "R", "HERE") if self.rng.random() < 0.5 else ("at", "R", "HERE")
        return [_tok(head, "PG", "LC-AT", 1), _tok(_pick(self.rng, _PLACE_NOUNS), "PG", "LC-AT", 0)]

    def loc_to(self):
        return [
            _tok(("to", "R", "DEST"), "PG", "LC-TO", 1),
            _tok(_pick(self.rng, _DETS[:2]), "PG", "LC-TO", 0),
            _tok(_pick(self.rng, _PLACE_NOUNS), "PG", "LC-TO", 0),
        ]

    def confirm(self):
        return [_tok(_pick(self.rng, _CONF_WORDS), "MG", "CONF", 1)]

    def negate(self):
        return [_tok(_pick(self.rng, _NEG_WORDS), "MG", "NEG", 1)]

    def particle(self):
        return [_tok(_pick(self.rng, _SG_WORDS), "SG", "MISC", 1)]

    def manner(self):
        return [_tok(_pick(self.rng, _AG_WORDS), "AG", "MANNER", 1)]

    def conjunction(self):
        return [_tok(_pick(self.rng, _CONJS), "CG", "MISC", 1)]

    def subject_that(self):
        return [_tok(("that", "U", "ABS"), "NG", "AGENT", 1)]

    def is_verb(self):
        return [_tok(("is", "V", "IS"), "VG", "ACT", 1)]


def _templates(g: _Grammar):
    """(weight, phrase builder list); builders are called left to right."""
    return [
        (3.0, [g.agent, g.verb_group, g.object_group]),
        (3.0, [g.agent, g.verb_group, g.object_group, g.time_at]),
        (2.0, [g.agent, g.verb_group, g.time_from, g.time_to]),
        (2.0, [g.confirm, g.agent, g.verb_group, g.object_group]),
        (1.5, [g.negate, g.agent, g.verb_group, g.object_group, g.time_at]),
        (1.5, [g.agent, g.verb_group, g.particle, g.object_group]),
        (1.5, [g.agent, g.verb_group, g.object_group, g.manner]),
        (1.0, [g.agent, g.verb_group, g.object_group, g.conjunction, g.agent, g.verb_group, g.object_group]),
        (1.5, [g.time_at, g.agent, g.verb_group, g.object_group]),
        (1.5, [g.agent, g.verb_group, g.object_group, g.loc_at]),
        (1.0, [g.subject_that, g.is_verb, g.object_group]),
        (1.0, [g.agent, (lambda: g.verb_group(_MOVE_VERBS)), g.loc_to]),
        (1.0, [g.agent, g.verb_group, g.object_group, g.time_from, g.time_to]),
    ]


@dataclass(frozen=True)
class GeneratorConfig:
    n_turns: int = 1000
    seed: int = 0
    p_pause: float = 0.03
    p_interjection: float = 0.04
    p_repetition: float = 0.04
    p_substitution: float = 0.1  # per object/place/day noun
    p_phrase_restart: float = 0.25  # per object group

    def __post_init__(self):
        for name in ("p_pause", "p_interjection", "p_repetition", "p_substitution", "p_phrase_restart"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.n_turns < len(_FIXTURE_TURNS):
            raise ValueError(f"need at least {len(_FIXTURE_TURNS)} turns for the fixed turns")


_NOUN_POOLS = (_OBJ_NOUNS, _PLACE_NOUNS, _DAYS)


def _mark_deleted(tokens, repair):
    for tok in tokens:
        tok.deleted = True
        tok.repair = repair
    return tokens


def _apply_disfluencies(tokens, cfg: GeneratorConfig, rng):
    """Roughen a fluent token list; insertions are pre-marked as deleted."""
    # Word substitutions: a wrong noun of the same pool precedes the intended one.
    out = []
    for tok in tokens:
        if tok.syn == "N" and rng.random() < cfg.p_substitution:
            pool = next((p for p in _NOUN_POOLS if any(w == tok.word for w, _, _ in p)), None)
            if pool is not None:
                alternatives = [it for it in pool if it[0] != tok.word]
                wrong = _tok(_pick(rng, alternatives), tok.syn_abs, tok.sem_abs, tok.boundary)
                out.extend(_mark_deleted([wrong], "word-repair"))
        out.append(tok)
    tokens = out
    # Repetitions: any token may be stuttered; the earlier copy is the repaired one.
    out = []
    for tok in tokens:
        if not tok.deleted and rng.random() < cfg.p_repetition:
            out.extend(_mark_deleted([replace(tok)], "word-repair"))
        out.append(tok)
    tokens = out
    # Interjections and pauses slip in before tokens.
    out = []
    for tok in tokens:
        if not tok.deleted and rng.random() < cfg.p_interjection:
            filler = _tok(_pick(rng, _INTERJECTIONS), "IG", "MISC", 1)
            out.extend(_mark_deleted([filler], "interjection"))
        if not tok.deleted and rng.random() < cfg.p_pause:
            pause = GoldToken(PAUSE_WORD, "/", "SG", "NIL", "MISC", 0)
            out.extend(_mark_deleted([pause], "pause"))
        out.append(tok)
    return out


def _generate_turn(turn_id: int, cfg: GeneratorConfig, rng) -> Turn:
    g = _Grammar(rng)
    templates = _templates(g)
    weights = np.array([w for w, _ in templates])
    choice = int(rng.choice(len(templates), p=weights / weights.sum()))
    builders = list(templates[choice][1])
    # Optional openers and adjuncts keep turns at conversational length.
    if builders[0] == g.agent and rng.random() < 0.35:
        builders.insert(0, g.confirm if rng.random() < 0.6 else g.negate)
    if builders[-1] == g.object_group:
        roll = rng.random()
        if roll < 0.25:
            builders.append(g.time_at)
        elif roll < 0.45:
            builders.append(g.manner)
    tokens = []
    for builder in builders:
        phrase = builder()
        if phrase[0].sem_abs == "OBJ" and rng.random() < cfg.p_phrase_restart:
            for _ in range(20):
                restart = builder()
                if [t.word for t in restart] != [t.word for t in phrase]:
                    tokens.extend(_mark_deleted(restart, "phrase-repair"))
                    break
        tokens.extend(phrase)
    return Turn(turn_id, _apply_disfluencies(tokens, cfg, rng))


def generate_corpus(cfg: GeneratorConfig | None = None) -> Corpus:
    """Deterministic in the seed; the fixed turns always come first."""
    cfg = cfg if cfg is not None else GeneratorConfig()
    rng = np.random.default_rng(cfg.seed)
    turns = [Turn(i, [replace(t) for t in toks]) for i, toks in enumerate(_FIXTURE_TURNS)]
    for turn_id in range(len(turns), cfg.n_turns):
        turns.append(_generate_turn(turn_id, cfg, rng))
    return Corpus(turns)


# ---- fixed hand-annotated turns -----------------------------------------
# (word, syn, abs syn, sem, abs sem, boundary, deleted, repair)


def _fixed(rows):
    return [
        GoldToken(w, s, sa, m, ma, b, bool(d), r if r != "-" else None)
        for w, s, sa, m, ma, b, d, r in rows
    ]


_FIXTURE_TURNS = [
    _fixed([
        ("käse", "N", "NG", "NO", "NEG", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("meine", "V", "VG", "UTTER", "ACT", 1, 0, "-"),
        ("natürlich", "A", "SG", "NIL", "MISC", 1, 0, "-"),
        ("märz", "N", "NG", "TIME", "TM-AT", 1, 0, "-"),
    ]),
    _fixed([
        ("käse", "N", "NG", "NO", "NEG", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("hätte", "V", "VG", "AUX", "AUX", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("märz", "N", "NG", "TIME", "TM-AT", 1, 0, "-"),
    ]),
    _fixed([
        ("ähm", "I", "IG", "NIL", "MISC", 1, 1, "interjection"),
        ("am", "R", "PG", "TIME", "TM-AT", 1, 0, "-"),
        ("sechsten", "M", "PG", "TIME", "TM-AT", 0, 0, "-"),
        ("april", "N", "PG", "TIME", "TM-AT", 0, 0, "-"),
        ("bin", "V", "VG", "IS", "ACT", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("leider", "A", "AG", "NO", "MANNER", 1, 0, "-"),
        ("außer", "R", "PG", "HERE", "LC-AT", 1, 0, "-"),
        ("hause", "N", "PG", "PHYS", "LC-AT", 0, 0, "-"),
    ]),
    _fixed([
        ("ja", "A", "MG", "YES", "CONF", 1, 0, "-"),
        ("genau", "A", "MG", "YES", "CONF", 0, 0, "-"),
        ("allerdings", "A", "SG", "NIL", "MISC", 1, 0, "-"),
        ("habe", "V", "VG", "HAVE", "ACT", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("da", "A", "SG", "NIL", "MISC", 1, 0, "-"),
        ("von", "R", "PG", "SRC", "TM-FRM", 1, 0, "-"),
        ("neun", "M", "PG", "TIME", "TM-FRM", 0, 0, "-"),
        ("bis", "R", "PG", "DEST", "TM-TO", 1, 0, "-"),
        ("vier", "M", "PG", "TIME", "TM-TO", 0, 0, "-"),
        ("uhr", "N", "PG", "TIME", "TM-TO", 0, 0, "-"),
        ("schon", "A", "AG", "NIL", "MANNER", 1, 0, "-"),
        ("einen", "D", "NG", "NIL", "OBJ", 1, 0, "-"),
        ("arzttermin", "N", "NG", "MEET", "OBJ", 0, 0, "-"),
    ]),
    _fixed([
        ("bin", "V", "VG", "IS", "ACT", 1, 0, "-"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 1, "word-repair"),
        ("ich", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("am", "R", "PG", "TIME", "TM-AT", 1, 0, "-"),
        ("mittwoch", "N", "PG", "TIME", "TM-AT", 0, 0, "-"),
    ]),
    _fixed([
        ("wir", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("haben", "V", "VG", "HAVE", "ACT", 1, 0, "-"),
        ("ein", "D", "NG", "NIL", "OBJ", 1, 0, "-"),
        ("termin", "N", "NG", "MEET", "OBJ", 0, 1, "word-repair"),
        ("treffen", "N", "NG", "MEET", "OBJ", 0, 0, "-"),
    ]),
    _fixed([
        ("wir", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("brauchen", "V", "VG", "HAVE", "ACT", 1, 0, "-"),
        ("den", "D", "NG", "NIL", "OBJ", 1, 1, "phrase-repair"),
        ("früheren", "J", "NG", "TIME", "OBJ", 0, 1, "phrase-repair"),
        ("termin", "N", "NG", "MEET", "OBJ", 0, 1, "phrase-repair"),
        ("den", "D", "NG", "NIL", "OBJ", 1, 0, "-"),
        ("späteren", "J", "NG", "TIME", "OBJ", 0, 0, "-"),
        ("termin", "N", "NG", "MEET", "OBJ", 0, 0, "-"),
    ]),
    _fixed([
        ("der", "D", "NG", "NIL", "AGENT", 1, 0, "-"),
        ("vierzehnte", "M", "NG", "TIME", "AGENT", 0, 0, "-"),
        ("ist", "V", "VG", "IS", "ACT", 1, 0, "-"),
        ("ein", "D", "NG", "NIL", "OBJ", 1, 0, "-"),
        ("mittwoch", "N", "NG", "TIME", "OBJ", 0, 0, "-"),
        ("richtig", "A", "MG", "YES", "CONF", 1, 0, "-"),
    ]),
    _fixed([
        ("wenn", "C", "CG", "NIL", "MISC", 1, 0, "-"),
        ("wir", "U", "NG", "ANIM", "AGENT", 1, 0, "-"),
        ("den", "D", "NG", "NIL", "OBJ", 1, 0, "-"),
        ("termin", "N", "NG", "MEET", "OBJ", 0, 0, "-"),
        ("haben", "V", "VG", "HAVE", "ACT", 1, 0, "-"),
    ]),
]
