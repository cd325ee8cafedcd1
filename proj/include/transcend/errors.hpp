#ifndef TRANSCEND_ERRORS_HPP
#define TRANSCEND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace transcend {

// Error taxonomy mirrored by the CLI exit codes: usage/parse failures exit 1,
// mathematical failures exit 2, precision or truncation exhaustion exits 3.
enum class errkind { usage, math, precision };

class error : public std::runtime_error {
public:
    error(errkind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    errkind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    errkind kind_;
    std::string code_;
};

inline error usage_error(const std::string& code, const std::string& what) {
    return error(errkind::usage, code, what);
}
inline error math_error(const std::string& code, const std::string& what) {
    return error(errkind::math, code, what);
}
inline error precision_error(const std::string& code, const std::string& what) {
    return error(errkind::precision, code, what);
}

} // namespace transcend

#endif
