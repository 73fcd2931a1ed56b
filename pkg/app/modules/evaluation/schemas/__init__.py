from .report import CutoffMetrics, EvalReport, FidelityResult
