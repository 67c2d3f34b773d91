# -*- coding: utf-8 -*-


class ReportableRuntimeError(RuntimeError):
    def __init__(self, message):
        self.message = message

    @property
    def args(self):
        return [self.message]

    def __str__(self):
        return str(self.message)

    def __repr__(self):
        return "ReportableRuntimeError: {}".format(self.__str__())


class UsageError(ReportableRuntimeError):
    """
    The caller broke a precondition: wrong dimension, a lambda outside [0, 1), an unsorted grid, and so on.
    The command line maps every UsageError to exit code 2.
    """

    def __repr__(self):
        return "UsageError: {}".format(self.__str__())


class DomainError(UsageError):
    def __init__(self, message, point=None):
        self.message = message
        self.point = point

    @property
    def args(self):
        return [self.message, self.point]

    def __repr__(self):
        return "DomainError: {}".format(self.__str__())


class ConfigLoadError(UsageError):
    def __init__(self, message, path):
        self.message = message
        self.path = path

    @property
    def args(self):
        return [self.message, self.path]

    def __str__(self):
        return "{}\nAt config location {}".format(str(self.message), str(self.path))

    def __repr__(self):
        return "ConfigLoadError: {}".format(self.__str__())


class ExpressionSyntaxError(UsageError):
    def __init__(self, message, position, source=None):
        self.message = message
        self.position = position
        self.source = source

    @property
    def args(self):
        return [self.message, self.position]

    def __str__(self):
        text = "{} (at position {})".format(str(self.message), self.position)
        if self.source is not None and len(self.source) <= 200:
            text += "\n\t{}\n\t{}^".format(self.source, " " * self.position)
        return text

    def __repr__(self):
        return "ExpressionSyntaxError: {}".format(self.__str__())


class SelfMapViolation(ReportableRuntimeError):
    """
    T(p) left the domain of the space, so T is not a self-map on the sampled region.
    Carries the offending input point and its image.
    """

    def __init__(self, message, point, image=None):
        self.message = message
        self.point = point
        self.image = image

    @property
    def args(self):
        return [self.message, self.point, self.image]

    def __str__(self):
        return "{}\n\tPoint: {}\n\tImage: {}".format(str(self.message), self.point, self.image)

    def __repr__(self):
        return "SelfMapViolation: {}".format(self.__str__())


class InfeasibleBandError(ReportableRuntimeError):
    def __init__(self, message, epsilon, width):
        self.message = message
        self.epsilon = epsilon
        self.width = width

    @property
    def args(self):
        return [self.message, self.epsilon, self.width]

    def __repr__(self):
        return "InfeasibleBandError: {}".format(self.__str__())


class CertificateEvaluationError(ReportableRuntimeError):
    def __init__(self, message, node=None):
        self.message = message
        self.node = node

    @property
    def args(self):
        return [self.message, self.node]

    def __str__(self):
        if self.node is None:
            return str(self.message)
        return "{}\n\tAt expression node: {}".format(str(self.message), self.node)

    def __repr__(self):
        return "CertificateEvaluationError: {}".format(self.__str__())


class ExpressionEvaluationError(CertificateEvaluationError):
    def __repr__(self):
        return "ExpressionEvaluationError: {}".format(self.__str__())


class InvalidModulusError(CertificateEvaluationError):
    def __repr__(self):
        return "InvalidModulusError: {}".format(self.__str__())


class SlackWarning(RuntimeWarning):
    def __init__(self, slack):
        super(SlackWarning, self).__init__()
        self.slack = slack
        self.message = (
            "A non-zero slack of {!r} is in effect. Certificate inequalities are relaxed by this amount.".format(slack)
        )

    @property
    def args(self):
        return [self.message]

    def __str__(self):
        return str(self.message)

    def __repr__(self):
        return "{}: {}".format(str(self.__class__), self.__str__())
