"""Model connectors: a REST chat-completions client plus test doubles.

All connectors expose generate_text(dialogue) -> str over a transcript of
DialogueMessage objects ending in a prompt. The REST connector speaks the
OpenAI-compatible chat-completions wire shape; scripted/static/replay/oracle
connectors serve tests and re-evaluation.
"""

from __future__ import annotations

import json
import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .records import DialogueMessage

DEFAULT_CREDENTIAL_ENV = "LKGB_API_KEY"
DEFAULT_RETRY_DELAYS = (1.0, 4.0, 16.0)


class ConnectorError(RuntimeError):
    """Model call failed after exhausting the retry budget."""


class ProtocolError(ConnectorError):
    """The endpoint answered with a body we cannot interpret."""


class ScriptExhaustedError(ConnectorError):
    """A scripted connector ran out of scripted steps."""


@dataclass
class ModelHandle:
    model_id: str
    connector_id: str
    endpoint_url: str = ""
    remote_model_name: str = ""
    request_params: dict = field(default_factory=dict)
    rate_limit: float = 60.0  # requests per minute
    credential_env: str = DEFAULT_CREDENTIAL_ENV
    extra: dict = field(default_factory=dict)  # connector-specific settings

    def __post_init__(self):
        if self.rate_limit <= 0:
            raise ValueError("rateLimit must be positive")


def build_chat_request(handle: ModelHandle, dialogue: list[DialogueMessage]) -> dict:
    """Deterministic chat-completions request document.

    Prompts map to role "user", answers to "assistant"; request params are
    passed through verbatim. The dialogue must end with a prompt.
    """
    if not dialogue or dialogue[-1].role != "prompt":
        raise ValueError("dialogue must end with a prompt message")
    messages = []
    for i, message in enumerate(dialogue):
        expected = "prompt" if i % 2 == 0 else "answer"
        if message.role != expected:
            raise ValueError("dialogue roles must alternate starting with a prompt")
        messages.append(
            {
                "role": "user" if message.role == "prompt" else "assistant",
                "content": message.content,
            }
        )
    request = {"model": handle.remote_model_name or handle.model_id, "messages": messages}
    request.update(handle.request_params)
    return request


def encode_chat_request(request: dict) -> bytes:
    """Byte-stable encoding for identical inputs."""
    return json.dumps(request, sort_keys=True, separators=(",", ":")).encode("utf-8")


class RateLimiter:
    """Sliding-window limiter: at most `per_minute` acquisitions per 60s.

    Shared per model handle; safe under concurrent use. Clock and sleep are
    injectable for tests.
    """

    def __init__(
        self,
        per_minute: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        if per_minute <= 0:
            raise ValueError("per_minute must be positive")
        self.per_minute = int(per_minute)
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._issued: deque[float] = deque()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = self._clock()
                while self._issued and now - self._issued[0] >= 60.0:
                    self._issued.popleft()
                if len(self._issued) < self.per_minute:
                    self._issued.append(now)
                    return
                wait = 60.0 - (now - self._issued[0])
            self._sleep(max(wait, 0.001))


class Connector:
    """Base: metadata buffering shared by all connector implementations."""

    def __init__(self):
        self._metadata: list[dict] = []
        self._meta_lock = threading.Lock()

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        raise NotImplementedError

    def record_metadata(self, entry: dict) -> None:
        with self._meta_lock:
            self._metadata.append(entry)

    def drain_metadata(self) -> list[dict]:
        with self._meta_lock:
            drained, self._metadata = self._metadata, []
            return drained


class RestChatConnector(Connector):
    """POST <endpoint>/chat/completions with a bearer credential.

    Retries transient failures with exponential backoff, then raises
    ConnectorError. The rate limiter may delay requests but never drops.
    """

    def __init__(
        self,
        handle: ModelHandle,
        retry_delays: tuple = DEFAULT_RETRY_DELAYS,
        timeout: float = 120.0,
        session=None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        super().__init__()
        if not handle.endpoint_url:
            raise ValueError(f"model {handle.model_id!r} needs an endpoint URL")
        self.handle = handle
        self.retry_delays = retry_delays
        self.timeout = timeout
        self._sleep = sleep
        if session is None:
            import requests

            session = requests.Session()
        self._session = session
        self.rate_limiter = RateLimiter(handle.rate_limit)

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        credential = os.environ.get(self.handle.credential_env or DEFAULT_CREDENTIAL_ENV)
        if credential:
            headers["Authorization"] = f"Bearer {credential}"
        return headers

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        request = build_chat_request(self.handle, dialogue)
        url = self.handle.endpoint_url.rstrip("/") + "/chat/completions"
        body = encode_chat_request(request)
        last_error: Optional[Exception] = None
        for attempt in range(len(self.retry_delays) + 1):
            if attempt:
                self._sleep(self.retry_delays[attempt - 1])
            self.rate_limiter.acquire()
            started = time.monotonic()
            try:
                response = self._session.post(
                    url, data=body, headers=self._headers(), timeout=self.timeout
                )
            except Exception as exc:  # connection errors, timeouts
                last_error = exc
                continue
            latency = time.monotonic() - started
            if response.status_code >= 500 or response.status_code == 429:
                last_error = ConnectorError(
                    f"HTTP {response.status_code} from {url}: {response.text[:200]}"
                )
                continue
            if response.status_code != 200:
                raise ConnectorError(
                    f"HTTP {response.status_code} from {url}: {response.text[:200]}"
                )
            return self._extract_answer(response, latency)
        raise ConnectorError(
            f"model call failed after {len(self.retry_delays) + 1} attempts: {last_error}"
        )

    def _extract_answer(self, response, latency: float) -> str:
        try:
            doc = response.json()
            answer = doc["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"malformed chat-completions response: {exc}") from exc
        if not isinstance(answer, str):
            raise ProtocolError("answer content is not a string")
        meta = {"latency_s": round(latency, 4)}
        usage = doc.get("usage")
        if isinstance(usage, dict):
            meta["usage"] = usage
        self.record_metadata(meta)
        return answer


@dataclass(frozen=True)
class ScriptStep:
    answer: str
    matcher: Optional[str] = None  # substring of the last prompt; None matches anything


class ScriptedConnector(Connector):
    """Plays back scripted steps; each step is consumed at most once.

    On each call the first unconsumed step whose matcher matches the last
    prompt is used. Running out of matching steps raises, never fabricates.
    """

    def __init__(self, steps: list[ScriptStep]):
        super().__init__()
        self.steps = list(steps)
        self._consumed = [False] * len(self.steps)
        self._lock = threading.Lock()

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        if not dialogue or dialogue[-1].role != "prompt":
            raise ValueError("dialogue must end with a prompt message")
        last_prompt = dialogue[-1].content
        with self._lock:
            for i, step in enumerate(self.steps):
                if self._consumed[i]:
                    continue
                if step.matcher is None or step.matcher in last_prompt:
                    self._consumed[i] = True
                    return step.answer
        raise ScriptExhaustedError("scripted connector has no step for this prompt")


class StaticConnector(Connector):
    """Always answers with the same text (mock models in configs)."""

    def __init__(self, answer: str):
        super().__init__()
        self.answer = answer
        self.calls = 0
        self._lock = threading.Lock()

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        if not dialogue or dialogue[-1].role != "prompt":
            raise ValueError("dialogue must end with a prompt message")
        with self._lock:
            self.calls += 1
        return self.answer


class ReplayConnector(Connector):
    """Returns recorded answers in order (transcript replay)."""

    def __init__(self, answers: list[str]):
        super().__init__()
        self.answers = list(answers)
        self._next = 0
        self._lock = threading.Lock()

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        with self._lock:
            if self._next >= len(self.answers):
                raise ScriptExhaustedError("replay connector exhausted")
            answer = self.answers[self._next]
            self._next += 1
            return answer


class OracleConnector(Connector):
    """Answers every prompt with the bound task's own gold answer.

    The runner rebinds the task before each iteration; used for
    self-consistency checks where combined must reach 1.0.
    """

    def __init__(self):
        super().__init__()
        self._task = None
        self.calls = 0

    def bind_task(self, task) -> None:
        self._task = task

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        if self._task is None:
            raise ConnectorError("oracle connector has no bound task")
        self.calls += 1
        return self._task.gold_answer(dialogue)


class FailingConnector(Connector):
    """Always raises; exercises the failed-iteration path."""

    def __init__(self, message: str = "synthetic connector failure"):
        super().__init__()
        self.message = message

    def generate_text(self, dialogue: list[DialogueMessage]) -> str:
        raise ConnectorError(self.message)


def _float_param(params: dict, key: str):
    return float(params[key]) if key in params else None


def create_connector(handle: ModelHandle) -> Connector:
    """Instantiate the connector named by handle.connector_id."""
    params = handle.extra
    if handle.connector_id == "openai-chat":
        delays = params.get("retryDelays")
        kwargs = {}
        if delays:
            kwargs["retry_delays"] = tuple(float(d) for d in str(delays).split(","))
        timeout = _float_param(params, "timeout")
        if timeout:
            kwargs["timeout"] = timeout
        return RestChatConnector(handle, **kwargs)
    if handle.connector_id == "static":
        return StaticConnector(params.get("answer", ""))
    if handle.connector_id == "scripted":
        steps = [
            ScriptStep(answer=answer)
            for answer in str(params.get("answers", "")).split("\x1e")
        ]
        return ScriptedConnector(steps)
    if handle.connector_id == "oracle":
        return OracleConnector()
    if handle.connector_id == "failing":
        return FailingConnector(params.get("message", "synthetic connector failure"))
    raise ValueError(f"unknown connector {handle.connector_id!r}")


CONNECTOR_IDS = ("openai-chat", "static", "scripted", "oracle", "failing")


def handle_from_config(model_id: str, connector_id: str, params: dict) -> ModelHandle:
    """Build a ModelHandle from the string-map form used in config files."""
    request_params: dict = {}
    if "temperature" in params:
        request_params["temperature"] = float(params["temperature"])
    if "maxTokens" in params:
        request_params["max_tokens"] = int(params["maxTokens"])
    return ModelHandle(
        model_id=model_id,
        connector_id=connector_id,
        endpoint_url=str(params.get("endpoint", "")),
        remote_model_name=str(params.get("model", "")),
        request_params=request_params,
        rate_limit=float(params.get("rateLimit", 60)),
        credential_env=str(params.get("credentialEnv", DEFAULT_CREDENTIAL_ENV)),
        extra=dict(params),
    )
