from pydantic import BaseModel, ConfigDict


class CoreSchema(BaseModel):
    model_config = ConfigDict(from_attributes=True)


class ArraySchema(BaseModel):
    """Base for immutable containers that hold numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
