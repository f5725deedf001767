#pragma once

#include <stdexcept>
#include <string>

namespace zetalift {

// Exit-code categories used by the CLI: 2 = precision, 3 = validation, 4 = parse.
enum class ErrorClass { Precision = 2, Validation = 3, Parse = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), cls_(cls), name_(std::move(name)) {}

    ErrorClass error_class() const { return cls_; }
    const std::string& name() const { return name_; }

private:
    ErrorClass cls_;
    std::string name_;
};

[[noreturn]] inline void throw_precision(const std::string& name, const std::string& msg) {
    throw Error(ErrorClass::Precision, name, msg);
}
[[noreturn]] inline void throw_validation(const std::string& name, const std::string& msg) {
    throw Error(ErrorClass::Validation, name, msg);
}
[[noreturn]] inline void throw_parse(const std::string& name, const std::string& msg) {
    throw Error(ErrorClass::Parse, name, msg);
}

} // namespace zetalift
