from pydantic import BaseModel as BaseSchema


class CacheData(BaseSchema):
    key: str
    value: bytes | str
