/*
Copyright 2026 The xprv Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef XPRV_ERRORS_HPP
#define XPRV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xprv {

// Base for every recoverable failure raised by the library. Contract
// violations on pure functions (bad rotation amount, bad QP) use
// std::invalid_argument / std::out_of_range instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input video (Y4M header, raw size mismatch, unsupported chroma).
class FormatError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

// Container or grammar violation found while reading a coded stream.
class BitstreamError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

// A dQP code no longer fits its 6-bit field after encryption.
class FieldOverflow : public Error {
public:
    FieldOverflow(std::size_t macroblock, unsigned value)
        : Error("dQP field overflow at macroblock " + std::to_string(macroblock) +
                ": encrypted value " + std::to_string(value) + " does not fit 6 bits"),
          macroblock_(macroblock), value_(value) {}

    // Index of the macroblock within the stream (counted across frames).
    std::size_t macroblock() const { return macroblock_; }
    unsigned value() const { return value_; }

private:
    std::size_t macroblock_;
    unsigned value_;
};

} // namespace xprv

#endif
