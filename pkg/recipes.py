# recipes.py - evaluate construction recipes
"""
Registry of recipe names. Each entry states how many integer arguments and child
recipes it takes; evaluation is bottom-up and deterministic, so the same text
always produces the same labelled multipole.
"""

import logging
import os
from typing import Callable, Dict, List, NamedTuple, Optional, Union

import constructions as C
import multipole_ops as ops
from models.errors import MultipoleError, RecipeError
from models.multipole import Multipole
from models.recipe import Recipe, parse_recipe

logger = logging.getLogger(__name__)


class RecipeEntry(NamedTuple):
    build: Callable[[List[int], List[Multipole]], Multipole]
    ints: Optional[int]       # None = any number
    children: Optional[int]   # None = any number (at least one)
    summary: str


def _superpose(ints: List[int], kids: List[Multipole]) -> Multipole:
    g, sc = kids
    return C.superpose(g, ints, sc)


RECIPES: Dict[str, RecipeEntry] = {
    # named graphs
    "petersen": RecipeEntry(lambda i, c: C.petersen(), 0, 0, "Petersen graph"),
    "k4": RecipeEntry(lambda i, c: C.complete_k4(), 0, 0, "complete graph K4"),
    "k33": RecipeEntry(lambda i, c: C.complete_k33(), 0, 0, "complete bipartite K3,3"),
    "prism": RecipeEntry(lambda i, c: C.prism(i[0]), 1, 0, "prism on 2n vertices"),
    "gp": RecipeEntry(lambda i, c: C.generalized_petersen(i[0], i[1]), 2, 0, "generalised Petersen GP(n,k)"),
    "mobius-kantor": RecipeEntry(lambda i, c: C.mobius_kantor(), 0, 0, "Mobius-Kantor graph"),
    "theta": RecipeEntry(lambda i, c: C.theta(), 0, 0, "three parallel edges"),
    "flower": RecipeEntry(lambda i, c: C.flower_snark(i[0]), 1, 0, "flower snark J_k"),
    "g36": RecipeEntry(lambda i, c: C.g36(), 0, 0, "H6 * TTT_sc(T_P x3), order 36"),
    "g66": RecipeEntry(lambda i, c: C.g66(), 0, 0, "H6 * TTT_sc(T(J5) x3), order 66"),
    "girth6": RecipeEntry(lambda i, c: C.family_girth6(i[0]), 1, 0, "girth-6 family member of order n"),
    "cc6": RecipeEntry(lambda i, c: C.family_cc6(i[0]), 1, 0, "cyclically 6-connected member of order n"),
    # building blocks
    "cycle": RecipeEntry(lambda i, c: C.cycle_multipole(i[0]), 1, 0, "k-cycle multipole C_k"),
    "path": RecipeEntry(lambda i, c: C.path_multipole(i[0]), 1, 0, "k-path multipole P_k"),
    "i-piece": RecipeEntry(lambda i, c: C.i_piece(), 0, 0, "I-extension piece"),
    "y": RecipeEntry(lambda i, c: C.y_segment(i[0]), 1, 0, "(3,3)-pole Y_k"),
    "h6": RecipeEntry(lambda i, c: C.h6(), 0, 0, "even (2,2,2)-pole H6"),
    "w": RecipeEntry(lambda i, c: C.supervertex_w(), 0, 0, "supervertex W"),
    "superedge": RecipeEntry(lambda i, c: C.isaacs_superedge(i[0]), 1, 0, "Isaacs superedge A_k"),
    "tp": RecipeEntry(lambda i, c: C.tp(), 0, 0, "(2,3)-pole T_P from Petersen"),
    "tj": RecipeEntry(lambda i, c: C.tj(i[0]), 1, 0, "girth-6 (2,3)-pole T(J_k)"),
    "t": RecipeEntry(lambda i, c: C.extract_23pole(c[0], i[0], i[1]), 2, 1, "(g - e) - v"),
    "ttt": RecipeEntry(lambda i, c: C.ttt_sc(*c), 0, 3, "TTT_sc of three (2,3)-poles"),
    "h6-ttt": RecipeEntry(lambda i, c: C.join_h6_ttt(*c), 0, 3, "H6 * TTT_sc of three (2,3)-poles"),
    "superpath": RecipeEntry(lambda i, c: C.superpath(c), 0, None, "superpath over the given superedges"),
    "supercycle": RecipeEntry(lambda i, c: C.supercycle(c), 0, None, "supercycle over the given superedges"),
    "standard-sc": RecipeEntry(lambda i, c: C.standard_supercycle(*i), None, 0, "SC_k over A_5, first superedge A_x"),
    "superpose": RecipeEntry(_superpose, None, 2, "Sup(g, cycle, sc): cycle vertices as integers"),
    "twisted": RecipeEntry(lambda i, c: C.twisted_closure(c[0]), 0, 1, "twisted closure of a (3,3)-pole"),
    # generic operations
    "remove-vertex": RecipeEntry(lambda i, c: ops.remove_vertex(c[0], i[0]), 1, 1, "M - v"),
    "remove-pair": RecipeEntry(lambda i, c: ops.remove_adjacent_pair(c[0], i[0], i[1]), 2, 1, "M - [u, v]"),
    "cut-edge": RecipeEntry(lambda i, c: ops.cut_edge(c[0], i[0]), 1, 1, "M - e"),
    "suppress": RecipeEntry(lambda i, c: ops.suppress(c[0], i[0]), 1, 1, "M ~ v"),
    "closure": RecipeEntry(lambda i, c: ops.closure(c[0]), 0, 1, "join the first two connectors"),
    "junction": RecipeEntry(lambda i, c: ops.junction(c[0], c[1], i[0], i[1]), 2, 2, "M *_{c1,c2} N"),
    "self-junction": RecipeEntry(lambda i, c: ops.self_junction(c[0], i[0], i[1]), 2, 1, "join two connectors of M"),
    "serial": RecipeEntry(lambda i, c: ops.serial_junction(c[0], c[1]), 0, 2, "M o N"),
    "dot": RecipeEntry(lambda i, c: C.dot_product(c[0], i[0], i[1], c[1], i[2], i[3]), 4, 2, "dot product"),
    "i-ext": RecipeEntry(lambda i, c: C.i_extension(c[0], i[0], i[1]), 2, 1, "I-extension on edges e, f"),
}


def _check_arity(recipe: Recipe, entry: RecipeEntry) -> None:
    ints, kids = len(recipe.ints), len(recipe.children)
    if entry.ints is not None and ints != entry.ints:
        raise RecipeError(f"'{recipe.name}' takes {entry.ints} integer argument(s), got {ints}")
    if entry.children is None:
        if kids < 1:
            raise RecipeError(f"'{recipe.name}' needs at least one child recipe")
    elif kids != entry.children:
        raise RecipeError(f"'{recipe.name}' takes {entry.children} child recipe(s), got {kids}")


def evaluate_recipe(recipe: Union[Recipe, str]) -> Multipole:
    """Build the multipole a recipe describes; the result is named by the recipe text."""
    if isinstance(recipe, str):
        recipe = parse_recipe(recipe)
    entry = RECIPES.get(recipe.name)
    if entry is None:
        raise RecipeError(f"unknown recipe '{recipe.name}'")
    _check_arity(recipe, entry)
    children = [evaluate_recipe(child) for child in recipe.children]
    try:
        result = entry.build(recipe.ints, children)
    except (MultipoleError, IndexError, TypeError) as exc:
        raise RecipeError(f"{recipe.to_text()}: {exc}") from exc
    logger.debug("recipe %s -> %r", recipe.to_text(), result)
    return result.renamed(recipe.to_text())


def read_recipe_source(source: str) -> str:
    """Recipe text itself, or the contents of a recipe file ('#' starts a comment line)."""
    if not os.path.isfile(source):
        return source
    with open(source, encoding="utf-8") as f:
        lines = [line.strip() for line in f]
    text = " ".join(line for line in lines if line and not line.startswith("#"))
    if not text:
        raise RecipeError(f"recipe file {source} is empty")
    logger.info("📂 recipe read from %s", source)
    return text


def list_recipes() -> List[str]:
    return [f"{name:<14} {entry.summary}" for name, entry in RECIPES.items()]
