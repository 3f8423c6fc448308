import pytest

from treequiver import corpus
from treequiver.dot import DotSyntaxError, is_valid_dot, quiver_dot, tree_dot, unfolding_dot, validate_dot
from treequiver.quiver import infinite_antichain


@pytest.mark.parametrize("name", sorted(corpus.SCHEMES))
def test_unfolding_dot_validates(name):
    S = corpus.SCHEMES[name]()
    comb = infinite_antichain(S)
    marks = comb.members(3) if comb else ()
    text = unfolding_dot(S, 4, marks)
    validate_dot(text)
    assert text.count("rank=same") == 5 or name == "finite"


@pytest.mark.parametrize("name", sorted(corpus.FINITE_TREES))
def test_tree_dot_validates(name):
    validate_dot(tree_dot(corpus.FINITE_TREES[name]()))


def test_antichain_overlay_marks_members():
    S = corpus.binary_scheme()
    text = unfolding_dot(S, 4, infinite_antichain(S).members(3))
    marked = [line.split()[0] for line in text.splitlines() if "fillcolor" in line]
    assert marked == ['".R.L"', '".R.R.L"', '".R.R.R.L"']


def test_labels_are_escaped():
    from treequiver.quiver import FiniteQuiver
    Q = FiniteQuiver(('a"b', "c\\d"), (("x", 'a"b', "c\\d"),), 'a"b')
    validate_dot(quiver_dot(Q))


@pytest.mark.parametrize("text", [
    "digraph { a -> }",
    "graph { a -> b }",
    "digraph { a -- b }",
    "digraph { a [label=x }",
    "digraph {} trailing",
    "digraph { node; }",
    "digraph { a @ b }",
    "",
])
def test_validator_rejects(text):
    assert not is_valid_dot(text)
    with pytest.raises(DotSyntaxError):
        validate_dot(text)


@pytest.mark.parametrize("text", [
    "digraph {}",
    "strict digraph G { node [shape=box]; a:n -> {b c} [w=1]; subgraph s { x } rankdir=LR }",
    "graph g { a -- b -- c; edge [color=red] // comment\n d }",
    'digraph "q" { "x y" [label=<<b>bold</b>>]; -1.5 -> .5 }',
])
def test_validator_accepts(text):
    validate_dot(text)
