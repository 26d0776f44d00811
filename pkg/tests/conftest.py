import json
from functools import lru_cache

from hypothesis import settings

from quiverforge.documents import build_algebra, corpus_dir, load_file

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

CORPUS = corpus_dir()
ALGEBRA_KINDS = ("bound-quiver-algebra", "blow-up")


def corpus_entries(*kinds):
    out = []
    for p in sorted(CORPUS.glob("*.json")):
        if json.loads(p.read_text())["kind"] in kinds:
            out.append(p.stem)
    return out


def corpus_doc(name):
    return load_file(CORPUS / f"{name}.json")


@lru_cache(maxsize=None)
def corpus_algebra(name):
    return build_algebra(corpus_doc(name))
