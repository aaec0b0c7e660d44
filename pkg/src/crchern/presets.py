"""Named ring presets for the command-line calculator.

A preset string is one or more factor specs joined with ``*`` (the
unicode multiplication sign is accepted too):

    cp:N         projective N-space:   Q[g]/(g^(N+1))
    surface:G    genus-G surface even part:  Q[g]/(g^2)
    fpp          fake projective plane even part:  Q[g]/(g^3)
    nilsquare:M  M degree-2 classes with square zero: Q[t1..tM]/(ti^2)

Generator names are assigned per factor from each preset's preferred
list, skipping names already taken, so ``cp:2`` alone uses ``t`` while
``fpp*cp:2`` uses ``t`` and ``h``.
"""

from __future__ import annotations

from .cohomology.ring import RATIONALS, Generator, RingError, RingPresentation, make_ring

_FALLBACK_NAMES = ("t", "h", "u", "v", "w", "y")

_PREFERRED = {
    "cp": ("t", "h", "u", "v"),
    "surface": ("s", "u", "v"),
    "fpp": ("t", "u", "v"),
}


class PresetError(ValueError):
    pass


def _pick_name(preset: str, taken: set[str]) -> str:
    for name in _PREFERRED.get(preset, ()) + _FALLBACK_NAMES:
        if name not in taken:
            taken.add(name)
            return name
    raise PresetError("ran out of generator names")


def _parse_factor(spec: str, taken: set[str]) -> list[Generator]:
    head, _, arg = spec.partition(":")
    head = head.strip()
    arg = arg.strip()
    if head == "cp":
        n = _positive_int(arg, "cp:N needs N >= 1")
        return [Generator(_pick_name("cp", taken), 2, n + 1)]
    if head == "surface":
        g = _nonnegative_int(arg, "surface:G needs G >= 0")
        del g  # the even-part ring does not depend on the genus
        return [Generator(_pick_name("surface", taken), 2, 2)]
    if head == "fpp":
        if arg:
            raise PresetError("fpp takes no parameter")
        return [Generator(_pick_name("fpp", taken), 2, 3)]
    if head == "nilsquare":
        m = _positive_int(arg, "nilsquare:M needs M >= 1")
        gens = []
        for j in range(1, m + 1):
            name = f"t{j}"
            if name in taken:
                raise PresetError(f"generator name collision for {name!r}")
            taken.add(name)
            gens.append(Generator(name, 2, 2))
        return gens
    raise PresetError(f"unknown preset {head!r}")


def _positive_int(arg: str, msg: str) -> int:
    try:
        value = int(arg)
    except ValueError:
        raise PresetError(msg) from None
    if value < 1:
        raise PresetError(msg)
    return value


def _nonnegative_int(arg: str, msg: str) -> int:
    try:
        value = int(arg)
    except ValueError:
        raise PresetError(msg) from None
    if value < 0:
        raise PresetError(msg)
    return value


def preset_ring(spec: str) -> RingPresentation:
    """Build the rational ring described by a preset string."""
    parts = spec.replace("×", "*").split("*")
    taken: set[str] = set()
    gens: list[Generator] = []
    for part in parts:
        part = part.strip()
        if not part:
            raise PresetError(f"empty factor in preset {spec!r}")
        gens.extend(_parse_factor(part, taken))
    try:
        return make_ring(gens, RATIONALS)
    except RingError as exc:
        raise PresetError(str(exc)) from exc
