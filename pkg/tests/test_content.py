import pytest
from hypothesis import given
from hypothesis import strategies as st

from infogen.content import (
    ContentItem,
    ContentSpec,
    parse_markdown,
    slot_signature,
    to_markdown,
)
from infogen.errors import ContentError


def test_parse_two_items_with_fields():
    spec = parse_markdown("- title: A\n  text: alpha\n- title: B\n  text: beta")
    assert len(spec.items) == 2
    assert spec.heading is None
    assert spec.items[0] == ContentItem(title="A", text="alpha")
    assert spec.items[1] == ContentItem(title="B", text="beta")
    assert all(slot_signature(i) == {"title", "text"} for i in spec.items)


def test_parse_heading_and_shorthand():
    spec = parse_markdown("# Plan\n- step one\n- step two\n- step three")
    assert spec.heading == "Plan"
    assert [i.text for i in spec.items] == ["step one", "step two", "step three"]
    assert all(slot_signature(i) == {"text"} for i in spec.items)


def test_parse_too_many_items():
    src = "\n".join(f"- item {i}" for i in range(13))
    with pytest.raises(ContentError, match="too many visual groups"):
        parse_markdown(src)


def test_parse_empty_input():
    with pytest.raises(ContentError, match="no content items"):
        parse_markdown("")
    with pytest.raises(ContentError, match="no content items"):
        parse_markdown("# Only a heading\n")


def test_parse_unknown_field_with_line_number():
    with pytest.raises(ContentError, match="unknown field 'notes' at line 3"):
        parse_markdown("- title: A\n  text: x\n  notes: nope")


def test_parse_unknown_key_on_bullet_line():
    with pytest.raises(ContentError, match="unknown field 'Note'"):
        parse_markdown("- Note: remember this")


def test_parse_duplicate_field():
    with pytest.raises(ContentError, match="duplicate field 'text'"):
        parse_markdown("- text: one\n  text: two")


def test_parse_continuation_joins_with_space():
    spec = parse_markdown("- title: A\n  text: first part\n    second part")
    assert spec.items[0].text == "first part second part"


def test_parse_case_insensitive_keys():
    spec = parse_markdown("- TITLE: A\n  Text: body\n  LaBeL: 01\n  IMAGE: pic.png")
    item = spec.items[0]
    assert (item.title, item.text, item.label, item.image) == ("A", "body", "01", "pic.png")


def test_parse_shorthand_with_colon_in_prose():
    spec = parse_markdown("- wash hands: thoroughly and often")
    assert spec.items[0].text == "wash hands: thoroughly and often"


def test_parse_image_url_value():
    spec = parse_markdown("- image: https://example.com/a.png\n  title: Pic")
    assert spec.items[0].image == "https://example.com/a.png"


def test_parse_stray_line_errors():
    with pytest.raises(ContentError, match="unexpected line 2"):
        parse_markdown("- title: A\nstray text")


def test_parse_max_items_option():
    src = "- a\n- b\n- c"
    assert len(parse_markdown(src).items) == 3
    with pytest.raises(ContentError, match="max 2"):
        parse_markdown(src, max_items=2)


def test_item_order_matches_source():
    spec = parse_markdown("- c\n- a\n- b")
    assert [i.text for i in spec.items] == ["c", "a", "b"]


def test_item_requires_a_field():
    with pytest.raises(ContentError):
        ContentItem()


def test_spec_bounds():
    with pytest.raises(ContentError, match="no content items"):
        ContentSpec(items=())
    with pytest.raises(ContentError, match="too many"):
        ContentSpec(items=tuple(ContentItem(text=str(i)) for i in range(13)))


def test_slot_signature_variants():
    assert slot_signature(ContentItem(label="01")) == {"label"}
    full = ContentItem(title="t", text="x", label="l", image="i.png")
    assert slot_signature(full) == {"title", "text", "label", "image"}


# ---------------------------------------------------------------- round-trip

_value = (
    st.text(
        alphabet=st.characters(
            blacklist_categories=("Cs", "Cc"), blacklist_characters="\n\r"
        ),
        min_size=1,
        max_size=40,
    )
    .map(lambda s: " ".join(s.split()))
    .filter(lambda s: s)
)

_item = st.fixed_dictionaries(
    {
        "title": st.none() | _value,
        "text": st.none() | _value,
        "label": st.none() | _value,
        "image": st.none() | _value,
    }
).filter(lambda d: any(v is not None for v in d.values())).map(lambda d: ContentItem(**d))

_spec = st.builds(
    ContentSpec,
    items=st.lists(_item, min_size=1, max_size=12).map(tuple),
    heading=st.none() | _value,
)


@given(_spec)
def test_round_trip(spec):
    assert parse_markdown(to_markdown(spec)) == spec


@given(_spec)
def test_serializer_output_always_parses(spec):
    parse_markdown(to_markdown(spec))  # must not raise
