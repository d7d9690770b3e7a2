"""Executable QA gates; each module exposes ``main(argv=None)`` and exits non-zero on failure."""
