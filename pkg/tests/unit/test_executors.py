import pytest

from threshold_game.executors import basic_executor, dask_executor, executor_for


@pytest.mark.parametrize(
    "executor", [basic_executor(), dask_executor(4), executor_for(1), executor_for(3)]
)
def test_executors_preserve_input_order(executor):
    result = executor(lambda x: x * x, list(range(20)))

    assert result == [x * x for x in range(20)]


def test_executors_accept_empty_input():
    result = dask_executor(2)(lambda x: x, [])

    assert result == []
