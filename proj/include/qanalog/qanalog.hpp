#pragma once

#include "qanalog/ntheory.hpp"
#include "qanalog/qpoly.hpp"
#include "qanalog/identities.hpp"
