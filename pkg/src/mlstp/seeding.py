"""Stable seed derivation shared by the generator and the benchmark runner."""

import hashlib


def derive_seed(*parts) -> int:
    """Hash an arbitrary tuple of printable parts into a 63-bit seed.

    Python's builtin ``hash`` is salted per process for strings, so a
    cryptographic digest over the ``repr`` of each part is used instead.
    """
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        h.update(repr(p).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big") >> 1
