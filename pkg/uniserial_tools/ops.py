from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from argparse import ArgumentParser

    from .cli import CommandRequest

from . import (
    catalog,
    classify,
    codec,
    constructions,
    lie,
    logger,
    sl2,
)

log = logger.get_logger(__name__)


@catalog.register_command
class ConstructCommand(catalog.Command):
    """Build the representation named by a label"""

    name = "construct"
    label = "Construct a representation from a label file"
    input_arguments = ("label",)

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("--label", required=True, help="Label JSON file")

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        """
        Allow this command only with exactly one label file.

        Args:
            request (CommandRequest)

        Returns:
            bool: Label file is given
        """
        return len(request.inputs) == 1

    def execute(self, request: CommandRequest) -> dict:
        label = codec.decode_label(codec.read_json(request.inputs[0]))
        rep = constructions.construct_R(label)
        log.info(f"Constructed {label.variant} representation of dimension {rep.d}")
        return rep.to_dict()


@catalog.register_command
class VerifyCommand(catalog.Command):
    """Check relations, faithfulness and uniseriality of a representation"""

    name = "verify"
    label = "Verify a representation file"
    input_arguments = ("representation",)

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("representation", help="Representation JSON file")

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        return len(request.inputs) == 1

    def execute(self, request: CommandRequest) -> dict:
        """
        Verify the representation. A failed verification is still a report,
        faithfulness and socle data are only computed for valid representations.

        Args:
            request (CommandRequest)

        Returns:
            dict: Verdict report
        """
        rep = codec.decode_representation(codec.read_json(request.inputs[0]))
        verdict = lie.verify_representation(rep)
        report = {
            "verdict": verdict,
            "faithful": None,
            "uniserial": None,
            "socle_factor_dims": None,
        }
        if verdict.ok:
            series = lie.socle_series(rep)
            report["faithful"] = lie.is_faithful(rep)
            report["uniserial"] = all(dim == 1 for dim in series.factor_dims)
            report["socle_factor_dims"] = list(series.factor_dims)
        else:
            log.warning(f"Representation violates {sorted(verdict.relations())}")
        return report


@catalog.register_command
class ClassifyCommand(catalog.Command):
    """Find the certified label of a faithful uniserial representation"""

    name = "classify"
    label = "Classify a representation file"
    input_arguments = ("representation",)

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("representation", help="Representation JSON file")
        parser.add_argument("--seed", type=int, default=None, help="Seed of the intertwiner sampler")

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        return len(request.inputs) == 1

    def execute(self, request: CommandRequest) -> dict:
        """
        Classify single-block representations directly, multi-block ones
        through their restriction to the first block.

        Args:
            request (CommandRequest)

        Returns:
            dict: Label and conjugator, or the restriction profile
        """
        rep = codec.decode_representation(codec.read_json(request.inputs[0]))
        if rep.spec.block_count == 1:
            return classify.certify(rep, request.seed).to_dict()
        return {"restriction": classify.restriction_profile(rep, request.seed).to_dict()}


@catalog.register_command
class ExistsCommand(catalog.Command):
    """Decide existence of a faithful uniserial representation"""

    name = "exists"
    label = "Existence verdict for a Jordan specification file"
    input_arguments = ("spec",)

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("spec", help="Jordan specification JSON file")
        parser.add_argument("--witness", action="store_true", help="Include an explicit witness")
        parser.add_argument("--alpha", default="0", help="Eigenvalue alpha of the witness")

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        return len(request.inputs) == 1

    def execute(self, request: CommandRequest) -> dict:
        spec = codec.decode_spec(codec.read_json(request.inputs[0]))
        verdict = classify.existence_check(spec)
        report = verdict.to_dict()
        if verdict.exists and request.options.get("witness"):
            alpha = codec.decode_rational(request.options.get("alpha", "0"), "--alpha")
            report["witness"] = classify.existence_witness(spec, alpha)
        return report


@catalog.register_command
class CgCommand(catalog.Command):
    """Clebsch-Gordan decomposition of M_{p,q}"""

    name = "cg"
    label = "Elementary divisors and lowest weight vectors of M_{p,q}"
    input_arguments = ()

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("-p", type=int, required=True, help="Rows")
        parser.add_argument("-q", type=int, required=True, help="Columns")

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        """
        Allow this command only for positive dimensions.

        Args:
            request (CommandRequest)

        Returns:
            bool: p and q are positive
        """
        return request.options.get("p", 0) >= 1 and request.options.get("q", 0) >= 1

    def execute(self, request: CommandRequest) -> dict:
        return sl2.cg_elementary_divisors(request.options["p"], request.options["q"]).to_dict()


@catalog.register_command
class ExtensionsCommand(catalog.Command):
    """Enumerate the extension space and optionally build one extension"""

    name = "extensions"
    label = "Extension space of R(alpha, k, X) for a Jordan specification file"
    input_arguments = ("spec",)

    @classmethod
    def add_arguments(cls, parser: ArgumentParser):
        parser.add_argument("spec", help="Jordan specification JSON file")
        parser.add_argument("--k", type=int, required=True, help="Split index")
        parser.add_argument("--alpha", default="0", help="Eigenvalue alpha")
        parser.add_argument("--x", default=None, help="Matrix JSON file for X, zero by default")
        build = parser.add_mutually_exclusive_group()
        build.add_argument("--params", default=None, help="Parameter JSON file to build")
        build.add_argument(
            "--witness", action="store_true", help="Build the canonical injective extension"
        )

    @classmethod
    def poll(cls, request: CommandRequest) -> bool:
        return len(request.inputs) == 1 and request.options.get("k") is not None

    def execute(self, request: CommandRequest) -> dict:
        """
        Enumerate parameter slots, build the extension when parameters are given.

        Args:
            request (CommandRequest)

        Returns:
            dict: Space report with an optional build
        """
        options = request.options
        spec = codec.decode_spec(codec.read_json(request.inputs[0]))
        alpha = codec.decode_rational(options.get("alpha", "0"), "--alpha")
        X = None
        if options.get("x"):
            X = codec.decode_matrix(codec.read_json(options["x"]), "--x")

        space = constructions.extension_space(spec, alpha, options["k"], X)
        report: dict = {"space": space}

        params = None
        if options.get("params"):
            params = codec.decode_parameters(codec.read_json(options["params"]))
        elif options.get("witness"):
            params = constructions.witness_parameters(space)

        if params is not None:
            result = constructions.build_extension(space, params)
            report["build"] = result.to_dict()
            report["params"] = codec.encode_parameters(space.complete(params))
            if not result.injective:
                log.warning("Parameter assignment is not injective on V")
        return report
