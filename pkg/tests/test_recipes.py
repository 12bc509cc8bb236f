import pytest

import constructions as C
from graph_io import canonical_form, canonical_hash
from models.errors import RecipeError
from models.recipe import Recipe, parse_recipe
from recipes import RECIPES, evaluate_recipe, list_recipes, read_recipe_source


def test_parse_nested_recipe():
    r = parse_recipe("(superpose 0 1 2 3 4 (petersen) (standard-sc 5))")
    assert r.name == "superpose"
    assert r.ints == [0, 1, 2, 3, 4]
    assert [c.name for c in r.children] == ["petersen", "standard-sc"]


def test_recipe_text_is_normalised():
    r = parse_recipe("  ( h6-ttt (tp)(tp)   (tp) ) ")
    assert r.to_text() == "(h6-ttt (tp) (tp) (tp))"
    assert parse_recipe(r.to_text()) == r


def test_bare_word_recipe():
    assert parse_recipe("petersen") == Recipe(name="petersen")


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("(flower 5", "unbalanced"),
    ("(flower five)", "not an integer"),
    ("(tp) (tp)", "trailing"),
    ("()", "without a name"),
    ("tp tp", "unparenthesised"),
])
def test_parse_errors(text, message):
    with pytest.raises(RecipeError, match=message):
        parse_recipe(text)


def test_h6_ttt_of_tp_is_g36():
    g = evaluate_recipe("(h6-ttt (tp) (tp) (tp))")
    assert g.order == 36
    assert g.name == "(h6-ttt (tp) (tp) (tp))"
    assert canonical_form(g) == canonical_form(C.g36())


def test_evaluation_is_deterministic():
    text = "(serial (y 2) (y 3))"
    assert evaluate_recipe(text) == evaluate_recipe(text)
    assert canonical_hash(evaluate_recipe(text)) == canonical_hash(C.y_segment(5))


def test_t_of_petersen_is_tp():
    assert canonical_form(evaluate_recipe("(t 0 3 (petersen))")) == canonical_form(C.tp())


def test_generic_operations():
    g = evaluate_recipe("(twisted (y 3))")
    assert g.is_closed and g.order == 12
    assert evaluate_recipe("(cut-edge 0 (petersen))").signature == (2,)
    assert evaluate_recipe("(remove-pair 0 1 (petersen))").signature == (2, 2)
    assert evaluate_recipe("(closure (remove-pair 0 1 (petersen)))").order == 8
    with pytest.raises(RecipeError, match="closure needs"):
        evaluate_recipe("(closure (cut-edge 0 (petersen)))")


def test_unknown_recipe():
    with pytest.raises(RecipeError, match="unknown recipe 'hexagon'"):
        evaluate_recipe("(hexagon)")


@pytest.mark.parametrize("text, message", [
    ("(flower)", "takes 1 integer"),
    ("(petersen 3)", "takes 0 integer"),
    ("(ttt (tp) (tp))", "takes 3 child"),
    ("(superpath)", "at least one child"),
])
def test_arity_errors(text, message):
    with pytest.raises(RecipeError, match=message):
        evaluate_recipe(text)


def test_construction_errors_become_recipe_errors():
    with pytest.raises(RecipeError, match="odd"):
        evaluate_recipe("(flower 4)")


def test_recipe_listing():
    lines = list_recipes()
    assert len(lines) == len(RECIPES)
    assert any(line.startswith("h6-ttt") for line in lines)


def test_recipe_read_from_file(tmp_path):
    path = tmp_path / "g36.recipe"
    path.write_text("# G36 from three Petersen poles\n(h6-ttt\n  (tp) (tp) (tp))\n", encoding="utf-8")
    text = read_recipe_source(str(path))
    assert text == "(h6-ttt (tp) (tp) (tp))"
    assert canonical_form(evaluate_recipe(text)) == canonical_form(C.g36())


def test_recipe_text_passes_through():
    assert read_recipe_source("(petersen)") == "(petersen)"


def test_empty_recipe_file(tmp_path):
    path = tmp_path / "empty.recipe"
    path.write_text("# nothing here\n\n", encoding="utf-8")
    with pytest.raises(RecipeError, match="empty"):
        read_recipe_source(str(path))
