import pytest

from qsim.data import (
    FLOAT,
    INT,
    INT64_MAX,
    INT64_MIN,
    STR,
    Column,
    DataType,
    Relation,
    Schema,
    make_relation,
    value_dtype,
)
from qsim.errors import AmbiguousColumn, InvalidPlan, UnknownColumn
from qsim.extensions.simsel import Vector


class TestDataType:
    def test_str_forms(self):
        assert str(INT) == "int"
        assert str(DataType("vector", 4)) == "vector(4)"

    def test_equality_includes_param(self):
        assert DataType("vector", 4) != DataType("vector", 3)
        assert DataType("int") == INT


class TestValueDtype:
    def test_core_values(self):
        assert value_dtype(3) == INT
        assert value_dtype(2.5) == FLOAT
        assert value_dtype("x") == STR

    def test_bool_is_not_storable(self):
        # bool subclasses int in Python; it must not sneak in as an int value
        with pytest.raises(TypeError):
            value_dtype(True)

    def test_extension_value(self):
        assert value_dtype(Vector((1.0, 2.0))) == DataType("vector", 2)


class TestSchemaResolve:
    def make(self):
        return Schema((Column("t1.c", INT), Column("t1.a", INT),
                       Column("t2.c", INT), Column("t2.b", INT)))

    def test_qualified(self):
        schema = self.make()
        assert schema.resolve("t2", "c", None) == 2

    def test_unqualified_unique(self):
        schema = self.make()
        assert schema.resolve(None, "b", None) == 3

    def test_unqualified_ambiguous(self):
        with pytest.raises(AmbiguousColumn):
            self.make().resolve(None, "c", None)

    def test_unknown(self):
        with pytest.raises(UnknownColumn):
            self.make().resolve(None, "zz", None)
        with pytest.raises(UnknownColumn):
            self.make().resolve("t9", "c", None)

    def test_plain_schema_with_relation_name(self):
        schema = Schema((Column("c", INT), Column("a", INT)), relation_name="t3")
        assert schema.resolve("t3", "a", None) == 1
        assert schema.resolve(None, "a", None) == 1


class TestRelation:
    def test_valid(self):
        rel = make_relation("t", [("a", INT), ("s", STR)], [(1, "x"), (2, "y")])
        assert rel.row_count == 2
        assert rel.schema.arity == 2

    def test_arity_violation(self):
        with pytest.raises(InvalidPlan):
            make_relation("t", [("a", INT)], [(1, 2)])

    def test_type_violation(self):
        with pytest.raises(InvalidPlan):
            make_relation("t", [("a", INT)], [("one",)])

    def test_int64_range(self):
        make_relation("t", [("a", INT)], [(INT64_MAX,), (INT64_MIN,)])
        with pytest.raises(InvalidPlan):
            make_relation("t", [("a", INT)], [(INT64_MAX + 1,)])

    def test_vector_cells_match_dim(self):
        dt = DataType("vector", 2)
        make_relation("t", [("v", dt)], [(Vector((1.0, 2.0)),)])
        with pytest.raises(InvalidPlan):
            make_relation("t", [("v", dt)], [(Vector((1.0, 2.0, 3.0)),)])
