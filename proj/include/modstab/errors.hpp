#ifndef MODSTAB_ERRORS_HPP
#define MODSTAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modstab {

// Exit-code conventions used by the CLI:
//   2 = parameters outside the wave-existence domain
//   3 = degenerate configuration (boundary of the domain, non-generic kernel)
//   4 = numerical failure
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int code) : std::runtime_error(msg), code_(code) {}
    int exit_code() const { return code_; }
private:
    int code_;
};

struct NoBracket : Error {
    explicit NoBracket(const std::string& m) : Error("NoBracket: " + m, 2) {}
};
struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& m) : Error("OutOfDomain: " + m, 2) {}
};
struct DegenerateRoot : Error {
    explicit DegenerateRoot(const std::string& m) : Error("DegenerateRoot: " + m, 3) {}
};
struct SingularSylvester : Error {
    explicit SingularSylvester(const std::string& m) : Error("SingularSylvester: " + m, 3) {}
};
struct NonGenericKernel : Error {
    explicit NonGenericKernel(const std::string& m) : Error("NonGenericKernel: " + m, 3) {}
};
struct DegeneratePencil : Error {
    explicit DegeneratePencil(const std::string& m) : Error("DegeneratePencil: " + m, 3) {}
};
struct LeadingCoefficientZero : Error {
    explicit LeadingCoefficientZero(const std::string& m) : Error("LeadingCoefficientZero: " + m, 4) {}
};
struct QuadratureNoConvergence : Error {
    explicit QuadratureNoConvergence(const std::string& m) : Error("QuadratureNoConvergence: " + m, 4) {}
};
struct PeriodMismatch : Error {
    explicit PeriodMismatch(const std::string& m) : Error("PeriodMismatch: " + m, 4) {}
};
struct InsufficientModes : Error {
    explicit InsufficientModes(const std::string& m) : Error("InsufficientModes: " + m, 4) {}
};
struct TrackingAmbiguous : Error {
    explicit TrackingAmbiguous(const std::string& m) : Error("TrackingAmbiguous: " + m, 4) {}
};
struct EigenNoConvergence : Error {
    explicit EigenNoConvergence(const std::string& m) : Error("EigenNoConvergence: " + m, 4) {}
};

} // namespace modstab

#endif
