#ifndef SKETCHPLAN_ERRORS_H
#define SKETCHPLAN_ERRORS_H

#include <stdexcept>
#include <string>

namespace sketchplan {

struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string &msg, int line, int column)
        : Error("syntax error at " + std::to_string(line) + ":" +
                std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
};

struct UnsupportedFeature : Error {
    explicit UnsupportedFeature(const std::string &feature)
        : Error("unsupported feature: " + feature) {}
};

struct UnknownObjectType : Error {
    explicit UnknownObjectType(const std::string &msg) : Error(msg) {}
};

struct UnknownPredicate : Error {
    explicit UnknownPredicate(const std::string &msg) : Error(msg) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string &msg) : Error(msg) {}
};

struct GroundingExplosion : Error {
    explicit GroundingExplosion(const std::string &msg) : Error(msg) {}
};

struct Inapplicable : Error {
    explicit Inapplicable(const std::string &msg) : Error(msg) {}
};

struct MemoryCap : Error {
    explicit MemoryCap(const std::string &msg) : Error(msg) {}
};

struct StateSpaceTooLarge : Error {
    explicit StateSpaceTooLarge(const std::string &msg) : Error(msg) {}
};

struct UnknownBinding : Error {
    explicit UnknownBinding(const std::string &msg) : Error(msg) {}
};

struct EmptyCandidateSet : Error {
    explicit EmptyCandidateSet(const std::string &msg) : Error(msg) {}
};

struct NoAliveStates : Error {
    explicit NoAliveStates(const std::string &msg) : Error(msg) {}
};

struct AllCandidatesExcluded : Error {
    explicit AllCandidatesExcluded(const std::string &msg) : Error(msg) {}
};

struct NoSubgoalInCandidates : Error {
    explicit NoSubgoalInCandidates(const std::string &msg) : Error(msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string &msg) : Error(msg) {}
};

}  // namespace sketchplan

#endif
