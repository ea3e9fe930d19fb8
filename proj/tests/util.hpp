#pragma once

#include <string>

#include "synccodes/words.hpp"

inline synccodes::Word W(const std::string& s, int q = 2) { return synccodes::Word::parse(s, q); }
