import json
from pathlib import Path

import pytest

from bqr.corpus import CorpusHandle, Document
from bqr.index import build_index
from bqr.providers import build_fixture

DATA_DIR = Path(__file__).resolve().parents[1] / "data" / "synthetic"


def make_doc(doc_id, text="", title="", geo=None, gender=None, **attrs):
    attributes = {}
    if geo:
        attributes["geography"] = tuple(geo) if isinstance(geo, (list, tuple)) else (geo,)
    if gender:
        attributes["gender"] = tuple(gender) if isinstance(gender, (list, tuple)) else (gender,)
    for dim, labels in attrs.items():
        attributes[dim] = tuple(labels) if isinstance(labels, (list, tuple)) else (labels,)
    return Document(doc_id=doc_id, title=title, text=text, attributes=attributes)


def make_corpus(docs, dimensions=("geography", "gender")):
    return CorpusHandle(docs, dimensions)


class RecordingProvider:
    """Wraps a response synthesizer and remembers every prompt it served."""

    def __init__(self, synthesizer):
        self._synthesizer = synthesizer
        self.responses: dict[str, str] = {}
        self.calls: list[str] = []

    def complete(self, prompt: str) -> str:
        self.calls.append(prompt)
        response = self._synthesizer(prompt)
        self.responses[prompt] = response
        return response

    def fixture(self) -> dict[str, str]:
        return build_fixture(self.responses)


def keyword_synthesizer(prompt: str) -> str:
    """Deterministic fake LLM: numbered topic+keyword combinations."""
    lines = prompt.strip().splitlines()
    topic = lines[-2].split(":", 1)[1].strip()
    keywords = [k.strip() for k in lines[-1].split(":", 1)[1].split(",") if k.strip()]
    queries = [f"{topic} {kw}" for kw in keywords]
    queries += [f"{a} {b}" for a, b in zip(keywords, keywords[1:])]
    return "\n".join(f"{i}. {q}" for i, q in enumerate(queries[:10], start=1))


@pytest.fixture
def recording_provider():
    return RecordingProvider(keyword_synthesizer)


@pytest.fixture
def two_region_corpus():
    """40 docs split between two regions, retrievable by disjoint terms."""
    docs = []
    for i in range(20):
        docs.append(
            make_doc(
                f"a{i:02d}",
                text=f"solar power energy site{i} shared words",
                geo="region-west",
            )
        )
    for i in range(20):
        docs.append(
            make_doc(
                f"b{i:02d}",
                text=f"lunar base colony site{i} shared words",
                geo="region-east",
            )
        )
    return make_corpus(docs)


@pytest.fixture
def two_region_index(two_region_corpus):
    return build_index(two_region_corpus)


def write_jsonl(path: Path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {'PASS' if report.passed else 'FAIL'}: {name}")
