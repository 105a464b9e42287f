#pragma once

#include "alphabet.hpp"
#include "automaton.hpp"
#include "bigint.hpp"
#include "codec.hpp"
#include "constraints.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "selftest.hpp"
#include "spec.hpp"
