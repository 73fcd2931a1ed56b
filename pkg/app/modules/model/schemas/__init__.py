from .model import FactorModel, ModelConfig, ParameterGradient, csr_from_structure, feature_matrix
