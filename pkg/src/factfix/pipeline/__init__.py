from factfix.pipeline.runner import EmptyParseError, PipelineDeps, run_pipeline

__all__ = ["EmptyParseError", "PipelineDeps", "run_pipeline"]
