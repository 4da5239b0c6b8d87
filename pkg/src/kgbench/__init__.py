"""kgbench: benchmark harness for chat LLMs on knowledge-graph tasks."""

__version__ = "0.1.0"
