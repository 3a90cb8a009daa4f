/*
 *   Copyright 2026 The aawrangle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ASSOC_ASSOC_HPP
#define ASSOC_ASSOC_HPP

#include "assoc/array.hpp"
#include "assoc/denormalize.hpp"
#include "assoc/doc.hpp"
#include "assoc/error.hpp"
#include "assoc/io.hpp"
#include "assoc/key.hpp"
#include "assoc/pivot.hpp"
#include "assoc/semiring.hpp"
#include "assoc/value.hpp"

#endif // ASSOC_ASSOC_HPP
