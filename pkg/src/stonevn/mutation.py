"""Deliberate defects used to show that the verification suites can fail.

The swap is process-global and not thread-safe; only use it around
single-threaded verification runs.
"""

from contextlib import contextmanager

from . import vnring


def _wrong_join(e, f):
    # drops the -e*f correction term
    return e + f


MUTATIONS = {"join": ("join", _wrong_join)}


@contextmanager
def mutated(name):
    op, impl = MUTATIONS[name]
    saved = vnring.BOOLEAN_OPS[op]
    vnring.BOOLEAN_OPS[op] = impl
    try:
        yield
    finally:
        vnring.BOOLEAN_OPS[op] = saved


def broken_join():
    return mutated("join")
