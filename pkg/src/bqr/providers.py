"""LLM providers: deterministic replay fixtures for tests, optional live HTTP.

A provider is anything with complete(prompt) -> str. The replay provider
is keyed by a sha256 of the exact prompt text, so any prompt drift fails
loudly instead of silently replaying stale responses.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .errors import ProviderError

LLM_ENDPOINT_ENV = "BQR_LLM_ENDPOINT"
LLM_KEY_ENV = "BQR_LLM_KEY"


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


def build_fixture(responses: dict[str, str]) -> dict[str, str]:
    """Map prompt text -> response text into the on-disk hash-keyed form."""
    return {prompt_hash(prompt): response for prompt, response in responses.items()}


class ReplayProvider:
    """Serves canned responses keyed by prompt hash; contention-free."""

    def __init__(self, fixtures: dict[str, str], source: str = "<memory>"):
        self._fixtures = dict(fixtures)
        self._source = source

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayProvider":
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in data.items()
        ):
            raise ProviderError(f"{path}: fixture file must be a JSON map hash -> response")
        return cls(data, source=str(path))

    def complete(self, prompt: str) -> str:
        key = prompt_hash(prompt)
        try:
            return self._fixtures[key]
        except KeyError:
            raise ProviderError(
                f"no fixture for prompt hash {key} in {self._source}; "
                "the prompt text has drifted or the fixture set is incomplete"
            ) from None


class LiveHttpProvider:
    """Minimal chat-completion client; configuration-gated, never used in CI."""

    def __init__(
        self,
        endpoint: str | None = None,
        model: str = "default",
        timeout: float = 30.0,
        api_key: str | None = None,
    ):
        self.endpoint = endpoint or os.environ.get(LLM_ENDPOINT_ENV)
        self.api_key = api_key or os.environ.get(LLM_KEY_ENV)
        self.model = model
        self.timeout = timeout
        if not self.endpoint:
            raise ProviderError(
                f"live provider needs an endpoint ({LLM_ENDPOINT_ENV} or explicit argument)"
            )

    def complete(self, prompt: str) -> str:
        import requests

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
        }
        try:
            resp = requests.post(self.endpoint, json=body, headers=headers, timeout=self.timeout)
            resp.raise_for_status()
            data = resp.json()
            return data["choices"][0]["message"]["content"]
        except Exception as exc:
            raise ProviderError(f"live provider call failed: {exc}") from exc
