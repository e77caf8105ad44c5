import json

from commlen.recipes import FIXTURE_DIR, all_recipes, fixture_name
from commlen.stripdiag import strip_to_json


def test_shipped_fixtures_match_recipes():
    recipes = all_recipes()
    assert recipes
    for name, sd in recipes.items():
        shipped = json.loads((FIXTURE_DIR / fixture_name(name)).read_text())
        assert shipped == json.loads(json.dumps(strip_to_json(sd))), name


def test_no_stray_fixtures():
    names = {fixture_name(n) for n in all_recipes()}
    assert {p.name for p in FIXTURE_DIR.glob("*.json")} == names


def test_write_fixtures_is_reproducible(tmp_path):
    from commlen.recipes import write_fixtures

    for p in write_fixtures(tmp_path):
        assert p.read_text() == (FIXTURE_DIR / p.name).read_text()
