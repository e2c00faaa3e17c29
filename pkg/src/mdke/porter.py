"""Porter stemmer, original 1980 rule set.

Only the published rules are applied (no ``bli``/``logi`` departures from the
later reference code).  Words of one or two letters are returned unchanged,
as in Porter's own implementation.
"""

from __future__ import annotations

from functools import lru_cache

_VOWELS = frozenset("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in ``stem`` ([C](VC)^m[V])."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _m_gt(n):
    return lambda stem: _measure(stem) > n


def _apply_rules(word: str, rules) -> str:
    # Longest matching suffix wins; if its condition fails the step is done.
    for suffix, replacement, condition in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if condition is None or condition(stem):
                return stem + replacement
            return word
    return word


_STEP2 = [
    ("ational", "ate", _m_gt(0)),
    ("tional", "tion", _m_gt(0)),
    ("enci", "ence", _m_gt(0)),
    ("anci", "ance", _m_gt(0)),
    ("izer", "ize", _m_gt(0)),
    ("abli", "able", _m_gt(0)),
    ("alli", "al", _m_gt(0)),
    ("entli", "ent", _m_gt(0)),
    ("eli", "e", _m_gt(0)),
    ("ousli", "ous", _m_gt(0)),
    ("ization", "ize", _m_gt(0)),
    ("ation", "ate", _m_gt(0)),
    ("ator", "ate", _m_gt(0)),
    ("alism", "al", _m_gt(0)),
    ("iveness", "ive", _m_gt(0)),
    ("fulness", "ful", _m_gt(0)),
    ("ousness", "ous", _m_gt(0)),
    ("aliti", "al", _m_gt(0)),
    ("iviti", "ive", _m_gt(0)),
    ("biliti", "ble", _m_gt(0)),
]
_STEP2.sort(key=lambda r: -len(r[0]))

_STEP3 = [
    ("icate", "ic", _m_gt(0)),
    ("ative", "", _m_gt(0)),
    ("alize", "al", _m_gt(0)),
    ("iciti", "ic", _m_gt(0)),
    ("ical", "ic", _m_gt(0)),
    ("ful", "", _m_gt(0)),
    ("ness", "", _m_gt(0)),
]
_STEP3.sort(key=lambda r: -len(r[0]))

_STEP4 = [
    ("al", "", _m_gt(1)),
    ("ance", "", _m_gt(1)),
    ("ence", "", _m_gt(1)),
    ("er", "", _m_gt(1)),
    ("ic", "", _m_gt(1)),
    ("able", "", _m_gt(1)),
    ("ible", "", _m_gt(1)),
    ("ant", "", _m_gt(1)),
    ("ement", "", _m_gt(1)),
    ("ment", "", _m_gt(1)),
    ("ent", "", _m_gt(1)),
    ("ion", "", lambda s: _measure(s) > 1 and s[-1:] in ("s", "t")),
    ("ou", "", _m_gt(1)),
    ("ism", "", _m_gt(1)),
    ("ate", "", _m_gt(1)),
    ("iti", "", _m_gt(1)),
    ("ous", "", _m_gt(1)),
    ("ive", "", _m_gt(1)),
    ("ize", "", _m_gt(1)),
]
_STEP4.sort(key=lambda r: -len(r[0]))


def _step1a(word):
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-2]
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word):
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            return word[:-1]
        return word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not _has_vowel(stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if _ends_double_consonant(stem) and stem[-1] not in "lsz":
                return stem[:-1]
            if _measure(stem) == 1 and _ends_cvc(stem):
                return stem + "e"
            return stem
    return word


def _step1c(word):
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _step5a(word):
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            return stem
    return word


def _step5b(word):
    if _measure(word) > 1 and _ends_double_consonant(word) and word.endswith("l"):
        return word[:-1]
    return word


@lru_cache(maxsize=65536)
def porter_stem(word: str) -> str:
    """Single pass of the Porter algorithm over a lowercase ASCII word."""
    if len(word) <= 2:
        return word
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _apply_rules(word, _STEP2)
    word = _apply_rules(word, _STEP3)
    word = _apply_rules(word, _STEP4)
    word = _step5a(word)
    word = _step5b(word)
    return word


def porter_stem_fixpoint(word: str) -> str:
    """Apply :func:`porter_stem` until the output stops changing.

    A single pass is not idempotent (``agreed -> agre -> agr``); iterating
    terminates because every pass either shortens the word or only rewrites
    a final ``y`` to ``i``.
    """
    prev = word
    while True:
        nxt = porter_stem(prev)
        if nxt == prev:
            return nxt
        prev = nxt
