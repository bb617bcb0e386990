"""
Infinite word graphs: regular trees and the linked-triangle graph.

Tree vertices are reduced words (no letter repeated twice in a row) over the
first ``k`` letters, the root being the empty word. Linked-triangle vertices
are nonempty words over ``abc`` with the same restriction; ``a``, ``b``, ``c``
form the root triangle and every word ``w`` spans a triangle with its two
one-letter extensions.
"""
from functools import partial
from string import ascii_lowercase

from hyperwalk.exceptions import ParameterRangeError
from hyperwalk.graph.core import LazyGraph

TRIANGLE_ALPHABET = "abc"


def is_reduced_word(word: str, alphabet: str) -> bool:
    if not isinstance(word, str):
        return False
    if any(letter not in alphabet for letter in word):
        return False
    return all(word[i] != word[i + 1] for i in range(len(word) - 1))


def _tree_neighbors(alphabet: str, word: str) -> list[str]:
    result = [word[:-1]] if word else []
    last = word[-1] if word else ""
    result.extend(word + x for x in alphabet if x != last)
    return result


def tree(k: int) -> LazyGraph:
    """Infinite k-regular tree, root ``""``."""
    if not 2 <= k <= len(ascii_lowercase):
        raise ParameterRangeError(f"tree needs 2 <= k <= {len(ascii_lowercase)}, got {k}")
    alphabet = ascii_lowercase[:k]
    return LazyGraph(
        base="",
        neighbor_fn=partial(_tree_neighbors, alphabet),
        name=f"tree:{k}",
        membership=partial(is_reduced_word, alphabet=alphabet),
    )


def is_triangle_word(word: str) -> bool:
    return bool(word) and is_reduced_word(word, TRIANGLE_ALPHABET)


def _triangle_neighbors(word: str) -> list[str]:
    last = word[-1]
    result = [word + x for x in TRIANGLE_ALPHABET if x != last]
    if len(word) == 1:
        result.extend(x for x in TRIANGLE_ALPHABET if x != last)
    else:
        result.append(word[:-1])
        prev = word[-2]
        result.extend(word[:-1] + x for x in TRIANGLE_ALPHABET if x not in (last, prev))
    return result


def linked_triangle() -> LazyGraph:
    return LazyGraph(
        base="a",
        neighbor_fn=_triangle_neighbors,
        name="linked-triangle",
        membership=is_triangle_word,
    )

