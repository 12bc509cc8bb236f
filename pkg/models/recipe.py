# models/recipe.py - declarative construction trees
"""
A recipe is a tree `(name arg ...)` whose arguments are integers or child recipes,
e.g. `(h6-ttt (tj 5) (tj 5) (tj 5))`. Text form and model round-trip exactly.
"""

from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict

from models.errors import RecipeError


class Recipe(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    args: Tuple[Union[int, "Recipe"], ...] = ()

    @property
    def ints(self) -> List[int]:
        return [a for a in self.args if isinstance(a, int)]

    @property
    def children(self) -> List["Recipe"]:
        return [a for a in self.args if isinstance(a, Recipe)]

    def to_text(self) -> str:
        if not self.args:
            return f"({self.name})"
        parts = [a.to_text() if isinstance(a, Recipe) else str(a) for a in self.args]
        return f"({self.name} {' '.join(parts)})"

    def __str__(self) -> str:
        return self.to_text()


def _tokenize(text: str) -> List[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_recipe(text: str) -> Recipe:
    """Parse the s-expression form; a bare word is read as a call without arguments."""
    tokens = _tokenize(text)
    if not tokens:
        raise RecipeError("empty recipe")
    if tokens[0] != "(":
        if len(tokens) != 1:
            raise RecipeError(f"unparenthesised recipe '{text.strip()}'")
        return Recipe(name=tokens[0])

    pos = 0

    def parse_node() -> Recipe:
        nonlocal pos
        if tokens[pos] != "(":
            raise RecipeError(f"expected '(' at token {pos}")
        pos += 1
        if pos >= len(tokens) or tokens[pos] in "()":
            raise RecipeError("recipe node without a name")
        name = tokens[pos]
        pos += 1
        args: List[Union[int, Recipe]] = []
        while True:
            if pos >= len(tokens):
                raise RecipeError("unbalanced parentheses")
            tok = tokens[pos]
            if tok == ")":
                pos += 1
                return Recipe(name=name, args=tuple(args))
            if tok == "(":
                args.append(parse_node())
                continue
            try:
                args.append(int(tok))
            except ValueError:
                raise RecipeError(f"argument '{tok}' of '{name}' is not an integer") from None
            pos += 1

    recipe = parse_node()
    if pos != len(tokens):
        raise RecipeError("trailing tokens after recipe")
    return recipe


Recipe.model_rebuild()
