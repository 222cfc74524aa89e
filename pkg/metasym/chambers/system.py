"""ChamberSystem — typed chamber adjacency backed by a NetworkX graph.

Chambers are integer nodes carrying their ``flag`` (a frozenset of element
identifiers); an edge joins two chambers of a common panel and records the
panel ``type`` as a generator index. Distances and projections are plain
breadth-first searches over this graph and never consult a group.
"""

from __future__ import annotations

from collections import defaultdict
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import networkx as nx

from metasym.core.errors import (
    DisconnectedError,
    InvalidFlagError,
    InvariantViolationError,
    NonBuildingError,
    NotAGalleryError,
    WrongRankError,
)
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup
from metasym.models.schema import FlagResidue, Gallery, GroupElement, Word

logger = get_logger(__name__)


class ChamberSystem:
    """Chambers with i-panels for each type i.

    Args:
        chamber_flags: Flag of chamber ``c`` at position ``c``.
        element_types: Generator index of every element identifier.
        panels: Per type, the partition of chambers into panels.
        name: Label used in logs.
    """

    def __init__(
        self,
        chamber_flags: Sequence[frozenset[str]],
        element_types: Mapping[str, int],
        panels: Mapping[int, Sequence[Sequence[int]]],
        name: str = "chamber system",
    ) -> None:
        self.name = name
        self.types: tuple[int, ...] = tuple(sorted(panels))
        self.element_types: dict[str, int] = dict(element_types)
        self.panels: dict[int, list[frozenset[int]]] = {
            t: [frozenset(p) for p in panels[t]] for t in self.types
        }
        self.graph = nx.Graph()
        for c, flag in enumerate(chamber_flags):
            self.graph.add_node(c, flag=frozenset(flag))

        self._element_chambers: dict[str, set[int]] = defaultdict(set)
        for c, flag in enumerate(chamber_flags):
            for e in flag:
                self._element_chambers[e].add(c)

        for t, parts in self.panels.items():
            for panel in parts:
                self._check_panel(t, panel)
                self.graph.add_edges_from(combinations(sorted(panel), 2), type=t)

        if len(self) and not nx.is_connected(self.graph):
            raise DisconnectedError(f"{name} is not connected")
        logger.info(
            "Chamber system '%s': %d chambers, %d adjacencies, types %s",
            name,
            len(self),
            self.graph.number_of_edges(),
            list(self.types),
        )

    def _check_panel(self, t: int, panel: frozenset[int]) -> None:
        cores = {
            frozenset(e for e in self.flag(c) if self.element_types[e] != t)
            for c in panel
        }
        if len(cores) != 1:
            raise InvariantViolationError(f"{t}-panel {sorted(panel)} mixes flags beyond type {t}")

    # ------------------------------------------------------------------
    # Chambers and flags
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def chambers(self) -> range:
        return range(len(self))

    def flag(self, c: int) -> frozenset[str]:
        return self.graph.nodes[c]["flag"]

    def element_chambers(self, element_id: str) -> frozenset[int]:
        return frozenset(self._element_chambers.get(element_id, ()))

    def residue(self, flag: Iterable[str]) -> FlagResidue:
        """Chambers containing every element of *flag*."""
        flag = frozenset(flag)
        unknown = [e for e in flag if e not in self.element_types]
        if unknown:
            raise InvalidFlagError(f"invalid flag: unknown element(s) {sorted(unknown)}")
        if flag:
            chambers = reduce(frozenset.intersection, (self.element_chambers(e) for e in flag))
        else:
            chambers = frozenset(self.chambers)
        if not chambers:
            raise InvalidFlagError(f"invalid flag: {sorted(flag)} lies in no chamber")
        return FlagResidue(flag=flag, chambers=chambers)

    def is_flag(self, elements: Iterable[str]) -> bool:
        try:
            self.residue(elements)
        except InvalidFlagError:
            return False
        return True

    def adjacency_type(self, c: int, d: int) -> int | None:
        data = self.graph.get_edge_data(c, d)
        return None if data is None else data["type"]

    def panel_sizes(self) -> dict[int, set[int]]:
        return {t: {len(p) for p in parts} for t, parts in self.panels.items()}

    def to_panel_text(self) -> str:
        lines = [
            "panel " + " ".join(str(x) for x in (t, *sorted(panel)))
            for t in self.types
            for panel in sorted(self.panels[t], key=min)
        ]
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------
    # Galleries
    # ------------------------------------------------------------------

    def gallery(self, steps: Sequence[int]) -> Gallery:
        """Validate *steps* as a gallery and derive its type word."""
        steps = tuple(steps)
        if not steps:
            raise NotAGalleryError("not a gallery: no chambers")
        for c in steps:
            if c not in self.graph:
                raise NotAGalleryError(f"not a gallery: unknown chamber {c}")
        word = []
        for c, d in zip(steps, steps[1:]):
            t = self.adjacency_type(c, d)
            if t is None:
                raise NotAGalleryError(f"not a gallery: chambers {c} and {d} are not adjacent")
            word.append(t)
        return Gallery(steps=steps, word=tuple(word))

    def gallery_word(self, steps: Sequence[int]) -> Word:
        return self.gallery(steps).word

    def gallery_distance(self, c: int, d: int) -> int:
        try:
            return nx.shortest_path_length(self.graph, c, d)
        except (nx.NetworkXNoPath, nx.NodeNotFound) as exc:
            raise DisconnectedError(f"disconnected: no gallery from {c} to {d}") from exc

    def is_minimal_gallery(self, steps: Sequence[int] | Gallery) -> bool:
        gallery = steps if isinstance(steps, Gallery) else self.gallery(steps)
        return len(gallery.word) == self.gallery_distance(gallery.first, gallery.last)

    def distances_from(self, sources: Iterable[int]) -> dict[int, int]:
        """Multi-source BFS distances."""
        return {
            c: depth
            for depth, layer in enumerate(nx.bfs_layers(self.graph, list(sources)))
            for c in layer
        }

    # ------------------------------------------------------------------
    # Weyl distance
    # ------------------------------------------------------------------

    def _check_group(self, group: CoxeterGroup) -> None:
        if self.types and max(self.types) > group.rank:
            raise WrongRankError(f"types {list(self.types)} exceed the group rank {group.rank}")

    def weyl_distances(
        self,
        group: CoxeterGroup,
        sources: Iterable[int],
        toward_sources: bool = False,
        max_distance: int | None = None,
    ) -> tuple[dict[int, int], dict[int, int]]:
        """Gallery distance and reduced gallery word from *sources* to every chamber.

        The word of a minimal gallery is propagated layer by layer through the
        group tables; every BFS predecessor must induce the same element.
        With *toward_sources* the word is read from the chamber back to the
        sources.

        Returns:
            ``(distance, element_id)`` dictionaries keyed by chamber.

        Raises:
            NonBuildingError: two minimal galleries reduce to different elements.
        """
        self._check_group(group)
        table = group.left_action if toward_sources else group.right_action
        dist: dict[int, int] = {}
        elem: dict[int, int] = {}
        for depth, layer in enumerate(nx.bfs_layers(self.graph, list(sources))):
            if max_distance is not None and depth > max_distance:
                break
            for v in layer:
                dist[v] = depth
                if depth == 0:
                    elem[v] = group.identity.id
                    continue
                found: int | None = None
                for u, data in self.graph.adj[v].items():
                    if dist.get(u) != depth - 1:
                        continue
                    candidate = table[elem[u]][data["type"] - 1]
                    if found is None:
                        found = candidate
                    elif candidate != found:
                        raise NonBuildingError(
                            f"non-building system: minimal galleries to chamber {v} reduce to "
                            f"{group.element(found).word or 'e'} and {group.element(candidate).word or 'e'}"
                        )
                elem[v] = found
        return dist, elem

    def weyl_distance(self, group: CoxeterGroup, c: int, d: int) -> GroupElement:
        distance = self.gallery_distance(c, d)
        _, elem = self.weyl_distances(group, [c], max_distance=distance)
        return group.element(elem[d])

    # ------------------------------------------------------------------
    # Projection and convexity
    # ------------------------------------------------------------------

    def projection(self, a: FlagResidue, b: FlagResidue) -> frozenset[str]:
        """Intersect the flags of the chambers of *b* nearest to *a*."""
        for layer in nx.bfs_layers(self.graph, list(a.chambers)):
            nearest = b.chambers.intersection(layer)
            if nearest:
                return reduce(frozenset.intersection, (self.flag(c) for c in nearest))
        raise DisconnectedError("disconnected: residues lie in different components")

    def flags_within(self, elements: Iterable[str]) -> list[FlagResidue]:
        """Every non-empty flag made of *elements*, as residues."""
        pool = sorted(set(elements), key=lambda e: (self.element_types.get(e, 0), e))
        found: list[FlagResidue] = []

        def extend(start: int, flag: tuple[str, ...], chambers: frozenset[int], used: frozenset[int]) -> None:
            for k in range(start, len(pool)):
                e = pool[k]
                t = self.element_types.get(e)
                if t is None or t in used:
                    continue
                narrowed = chambers & self.element_chambers(e)
                if not narrowed:
                    continue
                grown = (*flag, e)
                found.append(FlagResidue(flag=frozenset(grown), chambers=narrowed))
                extend(k + 1, grown, narrowed, used | {t})

        extend(0, (), frozenset(self.chambers), frozenset())
        return found

    def convexity_witness(self, elements: Iterable[str]) -> tuple[list[str], list[str], list[str]] | None:
        """First flag pair whose projection leaves *elements*, or None."""
        pool = frozenset(elements)
        flags = self.flags_within(pool)
        for a in flags:
            for b in flags:
                image = self.projection(a, b)
                if not image <= pool:
                    return sorted(a.flag), sorted(b.flag), sorted(image)
        return None

    def is_convex(self, elements: Iterable[str]) -> bool:
        return self.convexity_witness(elements) is None
