from .model_services import ICheckpointStore, IModelService
