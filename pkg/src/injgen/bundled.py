"""Access to the example corpus shipped inside the package."""

import json
from importlib import resources


def corpus_docs():
    """(label, document) pairs in dependency order."""
    root = resources.files("injgen").joinpath("corpus")
    manifest = json.loads(root.joinpath("manifest.json").read_text())
    return [(label, json.loads(root.joinpath(label + ".json").read_text()))
            for label in manifest["order"]]


def load_corpus(reg):
    """Register every bundled document; returns label -> hash."""
    return {label: reg.store(doc, label=label) for label, doc in corpus_docs()}
