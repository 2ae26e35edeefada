#pragma once

#include "desguard/alphabet.hpp"
#include "desguard/automaton.hpp"
#include "desguard/closed_loop.hpp"
#include "desguard/dot.hpp"
#include "desguard/error.hpp"
#include "desguard/observability.hpp"
#include "desguard/observation.hpp"
#include "desguard/observer.hpp"
#include "desguard/problem.hpp"
#include "desguard/report.hpp"
