from typing import Callable, Dict, List

from src.commands.bench import bench_rows
from src.commands.context import CommandContext
from src.commands.corollary import corollary_rows
from src.commands.hardy import hardy_rows
from src.commands.heat import heat_rows
from src.commands.miyachi import miyachi_rows
from src.commands.transform import transform_rows
from src.commands.verify_all import verify_all_rows
from src.models.common import CheckRow
from src.models.config import Command

CommandFn = Callable[[CommandContext], List[CheckRow]]

COMMANDS: Dict[Command, CommandFn] = {
    Command.TRANSFORM: transform_rows,
    Command.HEAT: heat_rows,
    Command.HARDY: hardy_rows,
    Command.MIYACHI: miyachi_rows,
    Command.COROLLARY: corollary_rows,
    Command.VERIFY_ALL: verify_all_rows,
    Command.BENCH: bench_rows,
}
