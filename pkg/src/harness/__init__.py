from src.harness.acceptance import parse_manifest, read_manifest, run_acceptance
from src.harness.corpus import DEFAULT_CORPUS, CorpusSpec, default_manifest, load_corpus
from src.harness.dsl import build_group

__all__ = [
    "parse_manifest",
    "read_manifest",
    "run_acceptance",
    "DEFAULT_CORPUS",
    "CorpusSpec",
    "default_manifest",
    "load_corpus",
    "build_group",
]
