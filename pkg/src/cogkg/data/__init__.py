"""Bundled data files: default lexicon, seed ontology, QA corpus."""

from importlib import resources


def read_text(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def file_path(name: str) -> str:
    """Filesystem path of a bundled data file (non-zip installs)."""
    return str(resources.files(__package__).joinpath(name))
