import pytest

from factfix.llm.gateway import LLMGateway, ScriptedBackend
from factfix.models import PipelineConfig, SummaryRecord


@pytest.fixture
def record():
    return SummaryRecord(
        id="n1",
        gold_summary=(
            "The James Webb Space Telescope captured a new image of Pandora's Cluster, "
            "a megacluster of galaxies that allowed astronomers to peer into the distant universe."
        ),
        input_summary=(
            "The James Webb Space Telescope captured a old image of Pandora's Cluster, "
            "a megacluster of galaxies that allowed biologists to peer into the distant universe."
        ),
        source_article="The telescope's image of Pandora's Cluster shows thousands of galaxies.",
    )


def make_gateway(script, **kwargs):
    """Gateway with one 'mock' backend playing the given script, no real sleeps."""
    gateway = LLMGateway(sleep=lambda _s: None, **kwargs)
    backend = ScriptedBackend(script)
    gateway.register("mock", backend)
    return gateway, backend


@pytest.fixture
def internal_config():
    return PipelineConfig(system="cove", llm_backend="mock", evidence_source="internal")


@pytest.fixture
def rarr_internal_config():
    return PipelineConfig(system="rarr", llm_backend="mock", evidence_source="internal")
