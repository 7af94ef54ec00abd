# Renderers package
from wrzero.renderers.base import BaseRenderer
from wrzero.renderers.dot_format import DotRenderer
from wrzero.renderers.json_format import JsonRenderer
from wrzero.renderers.text_format import TextRenderer

_RENDERERS = {
    renderer_class().format_name: renderer_class
    for renderer_class in (JsonRenderer, DotRenderer, TextRenderer)
}


def available_formats() -> list[str]:
    return list(_RENDERERS)


def get_renderer(format_name: str) -> BaseRenderer:
    """Get the renderer for an output format."""
    renderer_class = _RENDERERS.get(format_name)
    if not renderer_class:
        raise ValueError(f"Unknown output format {format_name!r}; choose from {sorted(_RENDERERS)}")
    return renderer_class()


__all__ = [
    "BaseRenderer",
    "DotRenderer",
    "JsonRenderer",
    "TextRenderer",
    "available_formats",
    "get_renderer",
]
