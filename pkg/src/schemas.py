"""Base schema shared by every domain type"""

from pydantic import BaseModel, ConfigDict


class BaseSchema(BaseModel):
    """Immutable value type with strict field checking"""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        populate_by_name=True,
    )
