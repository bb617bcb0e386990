from hyperwalk.services.analysis import AnalysisService

__all__ = ["AnalysisService"]
