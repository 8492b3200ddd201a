from factfix.llm.gateway import (
    AuthenticationError,
    BackendUnavailableError,
    CompletionRequest,
    CompletionResult,
    LLMGateway,
    TransientBackendError,
    parse_numbered_list,
)
from factfix.llm.templates import MissingBindingError, render, template_ids

__all__ = [
    "AuthenticationError",
    "BackendUnavailableError",
    "CompletionRequest",
    "CompletionResult",
    "LLMGateway",
    "MissingBindingError",
    "TransientBackendError",
    "parse_numbered_list",
    "render",
    "template_ids",
]
